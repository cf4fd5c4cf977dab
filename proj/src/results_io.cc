#include "dualband/results_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dualband {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_results_csv(std::ostream& os, std::span<const ExperimentRow> rows) {
  int hist = 0, slots = 0;
  for (const ExperimentRow& r : rows) {
    hist = std::max(hist, static_cast<int>(r.ue_histogram.size()));
    slots = std::max(slots, static_cast<int>(r.uw_bits.size()));
  }
  os << "sweep_variable,sweep_value,scheduler,band,num_ues,uas_per_ue,"
        "bits_per_ua,tau_prime_s,drops,mean_outage,ci_low,ci_high,"
        "mean_satisfied";
  for (int i = 0; i < hist; ++i) os << ",ue_share_" << i << "_satisfied";
  for (int t = 1; t <= slots; ++t) os << ",uw_bits_t" << t;
  for (int t = 1; t <= slots; ++t) os << ",mmw_bits_t" << t;
  os << ",mean_iterations,ql_gain\n";

  for (const ExperimentRow& r : rows) {
    const Scenario& s = r.scenario;
    os << r.variable << ',' << r.value << ',' << to_string(s.scheduler) << ','
       << to_string(s.band) << ',' << s.num_ues << ',' << s.uas_per_ue << ','
       << format_number(s.bits_per_ua) << ','
       << format_number(s.radio.tau_prime_s) << ',' << s.drops << ','
       << format_number(r.outage.mean) << ',' << format_number(r.outage.low)
       << ',' << format_number(r.outage.high) << ','
       << format_number(r.mean_satisfied);
    for (int i = 0; i < hist; ++i) {
      os << ','
         << (i < static_cast<int>(r.ue_histogram.size())
                 ? format_number(r.ue_histogram[i])
                 : "0");
    }
    for (const auto* series : {&r.uw_bits, &r.mmw_bits}) {
      for (int t = 0; t < slots; ++t) {
        os << ','
           << (t < static_cast<int>(series->size())
                   ? format_number((*series)[t])
                   : "");
      }
    }
    os << ',' << format_number(r.mean_iterations) << ','
       << (r.ql_gain ? format_number(*r.ql_gain) : "") << '\n';
  }
}

void write_samples_csv(std::ostream& os, std::span<const ExperimentRow> rows) {
  os << "sweep_variable,sweep_value,scheduler,band,drop,outage\n";
  for (const ExperimentRow& r : rows) {
    for (std::size_t d = 0; d < r.outage_samples.size(); ++d) {
      os << r.variable << ',' << r.value << ','
         << to_string(r.scenario.scheduler) << ','
         << to_string(r.scenario.band) << ',' << d << ','
         << format_number(r.outage_samples[d]) << '\n';
    }
  }
}

nlohmann::json make_manifest(const ConfigFile& cfg) {
  nlohmann::json config = config_to_json(cfg);
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return {{"format", 1},
          {"seed", cfg.experiment.base.seed},
          {"drops", cfg.experiment.base.drops},
          {"config_hash", hash},
          {"config", config}};
}

std::filesystem::path emit_results(const ConfigFile& cfg,
                                   std::span<const ExperimentRow> rows) {
  std::filesystem::path dir(cfg.output.dir);
  std::filesystem::create_directories(dir);
  std::ostringstream csv, samples;
  write_results_csv(csv, rows);
  write_samples_csv(samples, rows);
  write_file(dir / cfg.output.csv, csv.str());
  write_file(dir / cfg.output.samples, samples.str());
  write_file(dir / cfg.output.manifest, make_manifest(cfg).dump(2) + "\n");
  return dir / cfg.output.csv;
}

}  // namespace dualband
