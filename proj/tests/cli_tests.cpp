// End-to-end checks of the CLI contract: exit codes, report schema, CSV
// outputs. Finds the binary through POLYPAT_BIN (set by ctest).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

std::string binary() {
  const char* bin = std::getenv("POLYPAT_BIN");
  return bin && *bin ? bin : "./polypat";
}

int run(const std::string& args) {
  std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  expect(run("correlate --family \"BAD(\" --N 10") == 2, "invalid family exits 2");
  expect(run("correlate --family \"y^2\" --N 1000000 --weight lambda") == 3,
         "oversized run exits 3 (capacity)");
  expect(run("vinogradov --alpha -0.25 --beta 0.25 --eta 0.3") == 4,
         "inadmissible eta exits 4 (contract)");
  expect(run("correlate --family \"0; y\" --N 10 --one-dim n --fixed 3") == 4,
         "constant member with fixed n exits 4");

  const std::string report = "/tmp/polypat_cli_report.json";
  expect(run("correlate --family \"0; y^2\" --N 50 --weight lambda --cutoff 500 --out " +
             report) == 0,
         "correlate run exits 0");
  {
    auto doc = nlohmann::json::parse(slurp(report));
    expect(doc["artifact"]["name"] == "polypat", "report carries the artifact block");
    expect(doc["config"].contains("seed"), "report echoes the seed");
    expect(doc["results"]["report"].contains("empirical") &&
               doc["results"]["report"].contains("predicted"),
           "correlate report has empirical and predicted");
  }

  const std::string csv = "/tmp/polypat_cli_beta.csv";
  expect(run("beta --family \"0; y; 2*y\" --pmax 5 --csv " + csv) == 0, "beta run exits 0");
  {
    std::string text = slurp(csv);
    expect(text.find("3,3,4,") != std::string::npos, "beta csv has the 3/4 row");
    expect(text.find("5,15,16,") != std::string::npos, "beta csv has the 15/16 row");
  }

  const std::string vals = "/tmp/polypat_cli_vals.csv";
  {
    std::ofstream f(vals);
    f << "n,re,im\n";
    for (int n = 1; n <= 40; ++n)
      f << n << "," << ((n * n) % 7 == 1 ? 1 : -1) << ",0\n";
  }
  expect(run("gowers --input " + vals + " --s 2 --interval 1 40 --method fft --out " +
             report) == 0,
         "gowers csv run exits 0");
  {
    auto doc = nlohmann::json::parse(slurp(report));
    expect(doc["results"]["method_used"] == "fft", "gowers report names the method");
    double norm = doc["results"]["normalised"];
    expect(norm > 0.0 && norm <= 1.0, "gowers norm in (0, 1]");
  }

  std::remove(report.c_str());
  std::remove(csv.c_str());
  std::remove(vals.c_str());
  std::printf("%s\n", failures ? "FAILURE" : "SUCCESS");
  return failures ? 1 : 0;
}
