// coxverify: runs verification campaigns over finite reflection groups and
// writes JSON-lines reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxeter/campaign.hpp"

namespace {

struct Profile {
  std::size_t max_elements, max_tuples, max_mem_mb;
  double timeout_s;
};

// Default budgets, selected by COXVERIFY_PROFILE.
Profile profile_from_env() {
  const char* env = std::getenv("COXVERIFY_PROFILE");
  std::string name = env ? env : "desk";
  if (name == "quick") return {20'000, 1'000'000, 1024, 60};
  if (name == "desk") return {200'000, 20'000'000, 4096, 0};
  if (name == "large") return {2'000'000, 500'000'000, 32768, 0};
  throw std::invalid_argument("COXVERIFY_PROFILE must be quick, desk or large, not '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification campaigns for finite reflection groups"};
  std::string group, campaign, out_path, golden_path;
  std::vector<int> offsets;
  Profile prof{};
  try {
    prof = profile_from_env();
  } catch (const std::exception& e) {
    std::cerr << "coxverify: " << e.what() << '\n';
    return 2;
  }
  coxeter::CampaignConfig cfg;
  cfg.max_elements = prof.max_elements;
  cfg.max_tuples = prof.max_tuples;
  cfg.max_mem_mb = prof.max_mem_mb;
  cfg.timeout_s = prof.timeout_s;

  std::vector<std::string> names;
  for (const auto& [n, c] : coxeter::campaign_names()) names.push_back(n);

  app.add_option("--group", group, "Group, e.g. B3, I2(30), A2xI2(5)")->required();
  app.add_option("--campaign", campaign, "Campaign name")->required()->check(CLI::IsMember(names));
  app.add_option("--offsets", offsets, "Length offsets over the reflection length (even)")->delimiter(',');
  app.add_option("--max-elements", cfg.max_elements, "Element cap")->check(CLI::PositiveNumber);
  app.add_option("--max-tuples", cfg.max_tuples, "Tuple cap per item")->check(CLI::PositiveNumber);
  app.add_option("--max-mem-mb", cfg.max_mem_mb, "Memory cap per item in MB")->check(CLI::PositiveNumber);
  app.add_option("--timeout-s", cfg.timeout_s, "Seconds per item (0 = none)")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Report path (default stdout)");
  app.add_option("--golden", golden_path, "Compare the report against this golden file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.group = group;
    cfg.campaign = coxeter::parse_campaign(campaign);
    cfg.offsets = offsets;

    std::ostringstream buffer;
    std::ofstream file;
    std::ostream* sink = &std::cout;
    if (!golden_path.empty()) {
      sink = &buffer;
    } else if (!out_path.empty()) {
      file.open(out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + out_path);
      sink = &file;
    }

    const coxeter::Summary s = coxeter::run_campaign(cfg, *sink);
    std::cerr << campaign << " on " << group << ": checked " << s.checked << ", passed " << s.passed << ", failed "
              << s.failed << ", skipped " << s.skipped << '\n';

    if (!golden_path.empty()) {
      const std::string report = buffer.str();
      if (!out_path.empty()) std::ofstream(out_path, std::ios::binary) << report;
      const bool same =
          coxeter::strip_report_header(report) == coxeter::strip_report_header(read_file(golden_path));
      std::cerr << "golden " << golden_path << ": " << (same ? "match" : "MISMATCH") << '\n';
      if (!same) return 1;
    }
    return s.failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "coxverify: " << e.what() << '\n';
    return 2;
  }
}
