#include "dualband/config.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dualband {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::invalid_argument(path + ": " + why);
}

// Reads the members of one JSON object and complains about leftovers.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail(where(key), "unknown key");
    }
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void num(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail(where(key), "expected a number");
      out = v->get<double>();
    }
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer()) fail(where(key), "expected an integer");
      out = v->get<int>();
    }
  }
  void u64(const std::string& key, std::uint64_t& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0) {
        fail(where(key), "expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) fail(where(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void text(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) fail(where(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  template <typename Parse, typename T>
  void word(const std::string& key, T& out, Parse parse) {
    std::string s;
    bool present = j_.contains(key);
    text(key, s);
    if (!present) return;
    try {
      out = parse(s);
    } catch (const std::invalid_argument& e) {
      fail(where(key), e.what());
    }
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void read_scenario(Section& s, Scenario& sc) {
  s.integer("num_ues", sc.num_ues);
  s.integer("uas_per_ue", sc.uas_per_ue);
  s.integer("num_classes", sc.num_classes);
  s.num("bits_per_ua", sc.bits_per_ua);
  if (const json* v = s.get("bits_per_class")) {
    if (!v->is_array()) fail(s.where("bits_per_class"), "expected an array");
    sc.bits_per_class.clear();
    for (const json& b : *v) {
      if (!b.is_number()) fail(s.where("bits_per_class"), "expected numbers");
      sc.bits_per_class.push_back(b.get<double>());
    }
  }
  s.word("rho_policy", sc.rho_policy, parse_rho_policy);
  s.num("edge_distance_m", sc.edge_distance_m);
  s.num("min_distance_m", sc.min_distance_m);
  s.num("max_distance_m", sc.max_distance_m);
  s.word("scheduler", sc.scheduler, parse_scheduler);
  s.word("band", sc.band, parse_band);
  s.word("classification", sc.classification, parse_classification);
}

void read_radio(Section& s, RadioConfig& r) {
  s.num("p1_dbm", r.p1_dbm);
  s.num("p2_dbm", r.p2_dbm);
  s.num("uw_bandwidth_hz", r.uw_bandwidth_hz);
  s.num("mmw_bandwidth_hz", r.mmw_bandwidth_hz);
  s.integer("k1", r.k1);
  s.integer("k2", r.k2);
  s.num("w1_hz", r.w1_hz);
  s.num("n0_dbm_hz", r.n0_dbm_hz);
  s.num("psi_dbi", r.psi_dbi);
  s.num("alpha1", r.alpha1);
  s.num("beta1_db", r.beta1_db);
  s.num("xi1_db", r.xi1_db);
  s.num("alpha2", r.alpha2);
  s.num("beta2_db", r.beta2_db);
  s.num("xi2_db", r.xi2_db);
  s.num("rician_k", r.rician_k);
  s.num("tau_s", r.tau_s);
  s.num("tau_prime_s", r.tau_prime_s);
}

void read_learning(Section& s, LearningConfig& l) {
  if (const json* v = s.get("rewards")) {
    if (!v->is_array() || v->size() != 3) {
      fail(s.where("rewards"), "expected [r1, -r2, r3]");
    }
    for (const json& x : *v) {
      if (!x.is_number()) fail(s.where("rewards"), "expected numbers");
    }
    l.rewards = {(*v)[0].get<double>(), -(*v)[1].get<double>(),
                 (*v)[2].get<double>()};
  }
  s.word("step_size", l.step_size, [](const std::string& w) {
    if (w == "visit_count") return StepSize::kVisitCount;
    if (w == "constant") return StepSize::kConstant;
    throw std::invalid_argument("unknown step_size '" + w + "'");
  });
  s.num("alpha", l.alpha);
  s.num("gamma", l.gamma);
  s.num("epsilon_min", l.epsilon_min);
  s.num("exploration_scale", l.exploration_scale);
  s.integer("warmup_steps", l.warmup_steps);
}

}  // namespace

ConfigFile parse_config_json(const json& j) {
  ConfigFile c;
  Scenario& sc = c.experiment.base;
  Section root(j, "");
  if (const json* v = root.get("scenario")) {
    Section s(*v, "scenario");
    read_scenario(s, sc);
  }
  if (const json* v = root.get("radio")) {
    Section s(*v, "radio");
    read_radio(s, sc.radio);
  }
  if (const json* v = root.get("learning")) {
    Section s(*v, "learning");
    read_learning(s, sc.learning);
  }
  if (const json* v = root.get("run")) {
    Section s(*v, "run");
    s.u64("seed", sc.seed);
    s.integer("drops", sc.drops);
    s.integer("parallel", c.experiment.parallel);
  }
  if (const json* v = root.get("experiment")) {
    Section s(*v, "experiment");
    if (const json* sw = s.get("sweep")) {
      Section w(*sw, "experiment.sweep");
      w.text("variable", c.experiment.sweep.variable);
      if (const json* vals = w.get("values")) {
        if (!vals->is_array()) fail("experiment.sweep.values", "expected an array");
        for (const json& x : *vals) {
          if (x.is_string()) {
            c.experiment.sweep.values.push_back(x.get<std::string>());
          } else if (x.is_number()) {
            c.experiment.sweep.values.push_back(number_text(x.get<double>()));
          } else {
            fail("experiment.sweep.values", "expected numbers or strings");
          }
        }
      }
    }
    if (const json* ks = s.get("schedulers")) {
      if (!ks->is_array() || ks->empty()) {
        fail("experiment.schedulers", "expected a non-empty array");
      }
      c.experiment.schedulers.clear();
      for (const json& k : *ks) {
        if (!k.is_string()) fail("experiment.schedulers", "expected strings");
        try {
          c.experiment.schedulers.push_back(parse_scheduler(k.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          fail("experiment.schedulers", e.what());
        }
      }
    }
    s.boolean("ql_gain", c.experiment.ql_gain);
  }
  if (const json* v = root.get("output")) {
    Section s(*v, "output");
    s.text("dir", c.output.dir);
    s.text("csv", c.output.csv);
    s.text("samples", c.output.samples);
    s.text("manifest", c.output.manifest);
  }

  if (c.experiment.parallel < 1) fail("run.parallel", "must be >= 1");
  if (c.experiment.sweep.variable.empty() != c.experiment.sweep.values.empty()) {
    fail("experiment.sweep", "variable and values go together");
  }
  sc.validate();
  for (const std::string& v : c.experiment.sweep.values) {
    Scenario probe = sc;
    try {
      apply_sweep(probe, c.experiment.sweep.variable, v);
      probe.validate();
    } catch (const std::invalid_argument& e) {
      fail("experiment.sweep", e.what());
    }
  }
  return c;
}

ConfigFile parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    return parse_config_json(json::object());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return parse_config_json(j);
}

json config_to_json(const ConfigFile& c) {
  const Scenario& sc = c.experiment.base;
  const RadioConfig& r = sc.radio;
  const LearningConfig& l = sc.learning;
  json j;
  j["scenario"] = {
      {"num_ues", sc.num_ues},
      {"uas_per_ue", sc.uas_per_ue},
      {"num_classes", sc.num_classes},
      {"bits_per_ua", sc.bits_per_ua},
      {"bits_per_class", sc.bits_per_class},
      {"rho_policy", to_string(sc.rho_policy)},
      {"edge_distance_m", sc.edge_distance_m},
      {"min_distance_m", sc.min_distance_m},
      {"max_distance_m", sc.max_distance_m},
      {"scheduler", to_string(sc.scheduler)},
      {"band", to_string(sc.band)},
      {"classification", to_string(sc.classification)},
  };
  j["radio"] = {
      {"p1_dbm", r.p1_dbm},         {"p2_dbm", r.p2_dbm},
      {"uw_bandwidth_hz", r.uw_bandwidth_hz},
      {"mmw_bandwidth_hz", r.mmw_bandwidth_hz},
      {"k1", r.k1},                 {"k2", r.k2},
      {"w1_hz", r.w1_hz},           {"n0_dbm_hz", r.n0_dbm_hz},
      {"psi_dbi", r.psi_dbi},       {"alpha1", r.alpha1},
      {"beta1_db", r.beta1_db},     {"xi1_db", r.xi1_db},
      {"alpha2", r.alpha2},         {"beta2_db", r.beta2_db},
      {"xi2_db", r.xi2_db},         {"rician_k", r.rician_k},
      {"tau_s", r.tau_s},           {"tau_prime_s", r.tau_prime_s},
  };
  j["learning"] = {
      {"rewards", {l.rewards.r1, -l.rewards.r2, l.rewards.r3}},
      {"step_size",
       l.step_size == StepSize::kVisitCount ? "visit_count" : "constant"},
      {"alpha", l.alpha},
      {"gamma", l.gamma},
      {"epsilon_min", l.epsilon_min},
      {"exploration_scale", l.exploration_scale},
      {"warmup_steps", l.warmup_steps},
  };
  j["run"] = {{"seed", sc.seed},
              {"drops", sc.drops},
              {"parallel", c.experiment.parallel}};
  json scheds = json::array();
  for (SchedulerKind k : c.experiment.schedulers) scheds.push_back(to_string(k));
  json exp = {{"schedulers", scheds}, {"ql_gain", c.experiment.ql_gain}};
  if (!c.experiment.sweep.variable.empty()) {
    exp["sweep"] = {{"variable", c.experiment.sweep.variable},
                    {"values", c.experiment.sweep.values}};
  }
  j["experiment"] = exp;
  j["output"] = {{"dir", c.output.dir},
                 {"csv", c.output.csv},
                 {"samples", c.output.samples},
                 {"manifest", c.output.manifest}};
  return j;
}

}  // namespace dualband
