#include "polypat/poly.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace polypat {

Poly::Poly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& Poly::leading_coefficient() const {
  static const Int zero = 0;
  return coeffs_.empty() ? zero : coeffs_.back();
}

Int Poly::eval(const Int& m) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + *it;
  return acc;
}

std::uint64_t Poly::eval_mod(std::uint64_t m, std::uint64_t p) const {
  std::uint64_t acc = 0;
  std::uint64_t mr = m % p;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::uint64_t c = mod_floor_big(*it, p);
    acc = (static_cast<__uint128_t>(acc) * mr + c) % p;
  }
  return acc;
}

Poly Poly::operator-(const Poly& other) const {
  std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
  return Poly(std::move(out));
}

Poly Poly::shifted_by(const Int& c) const {
  std::vector<Int> out = coeffs_;
  if (out.empty()) out.push_back(c);
  else out[0] += c;
  return Poly(std::move(out));
}

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out << a.str();
    } else {
      if (a != 1) out << a.str() << "*";
      out << "y";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

int PolyFamily::max_degree() const {
  int d = -1;
  for (const auto& p : polys) d = std::max(d, p.degree());
  return d;
}

const Poly& PolyFamily::at(std::size_t j) const {
  if (j < 1 || j > polys.size())
    throw std::out_of_range("polynomial index " + std::to_string(j) +
                            " out of range 1.." + std::to_string(polys.size()));
  return polys[j - 1];
}

PolyFamily PolyFamily::shifted_by(const Int& c) const {
  PolyFamily out;
  out.polys.reserve(polys.size());
  for (const auto& p : polys) out.polys.push_back(p.shifted_by(c));
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

Int parse_integer(Cursor& cur) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  std::string digits;
  while (cur.pos < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.pos]))) {
    digits.push_back(cur.s[cur.pos]);
    ++cur.pos;
  }
  if (digits.empty()) throw ParseError("expected integer", start);
  return Int(digits);
}

std::uint64_t parse_exponent(Cursor& cur) {
  Int e = parse_integer(cur);
  if (e > 64) throw ParseError("exponent too large", cur.pos);
  return e.convert_to<std::uint64_t>();
}

// term ::= INT [ '*'? 'y' [ '^' INT ] ] | 'y' [ '^' INT ]
void parse_term(Cursor& cur, int sign, std::vector<Int>& coeffs) {
  cur.skip_ws();
  Int coef = 1;
  bool have_coef = false;
  if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    coef = parse_integer(cur);
    have_coef = true;
  }
  std::uint64_t exponent = 0;
  cur.skip_ws();
  bool star = false;
  if (have_coef && cur.peek() == '*') {
    cur.accept('*');
    star = true;
  }
  if (cur.peek() == 'y') {
    cur.accept('y');
    exponent = 1;
    if (cur.accept('^')) exponent = parse_exponent(cur);
  } else {
    if (star) throw ParseError("expected 'y' after '*'", cur.pos);
    if (!have_coef) throw ParseError("expected term", cur.pos);
  }
  if (coeffs.size() < exponent + 1) coeffs.resize(exponent + 1, 0);
  coeffs[exponent] += sign * coef;
}

Poly parse_poly_at(Cursor& cur) {
  std::vector<Int> coeffs;
  int sign = 1;
  if (cur.accept('-')) sign = -1;
  else cur.accept('+');
  parse_term(cur, sign, coeffs);
  for (;;) {
    char c = cur.peek();
    if (c == '+') {
      cur.accept('+');
      parse_term(cur, 1, coeffs);
    } else if (c == '-') {
      cur.accept('-');
      parse_term(cur, -1, coeffs);
    } else {
      break;
    }
  }
  return Poly(std::move(coeffs));
}

}  // namespace

Poly parse_poly(const std::string& text) {
  Cursor cur{text};
  Poly p = parse_poly_at(cur);
  if (!cur.eof()) throw ParseError("unexpected trailing input", cur.pos);
  return p;
}

PolyFamily parse_family(const std::string& text) {
  Cursor cur{text};
  if (cur.eof()) throw ParseError("empty family", 0);
  PolyFamily fam;
  fam.polys.push_back(parse_poly_at(cur));
  while (cur.accept(';')) fam.polys.push_back(parse_poly_at(cur));
  if (!cur.eof()) throw ParseError("unexpected trailing input", cur.pos);
  return fam;
}

std::string family_to_string(const PolyFamily& fam) {
  std::string out;
  for (std::size_t i = 0; i < fam.polys.size(); ++i) {
    if (i) out += "; ";
    out += fam.polys[i].to_string();
  }
  return out;
}

std::string family_to_json(const PolyFamily& fam) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : fam.polys) {
    nlohmann::json coeffs = nlohmann::json::array();
    if (p.is_zero()) coeffs.push_back("0");
    for (const auto& c : p.coeffs()) coeffs.push_back(c.str());
    arr.push_back(coeffs);
  }
  return arr.dump();
}

PolyFamily family_from_json(const std::string& json_text) {
  nlohmann::json arr = nlohmann::json::parse(json_text);
  if (!arr.is_array() || arr.empty())
    throw ParseError("family JSON must be a nonempty array of coefficient arrays", 0);
  PolyFamily fam;
  for (const auto& item : arr) {
    std::vector<Int> coeffs;
    for (const auto& c : item) coeffs.emplace_back(c.get<std::string>());
    fam.polys.emplace_back(std::move(coeffs));
  }
  return fam;
}

}  // namespace polypat
