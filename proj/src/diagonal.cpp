#include "succinct/diagonal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "succinct/io.hpp"

namespace succinct {

LimitApproximation constant_schedule(std::size_t value) {
  LimitApproximation a;
  a.g = [value](std::size_t, std::size_t) { return value; };
  a.stable_from = [](std::size_t) { return std::size_t{0}; };
  a.label = "constant " + std::to_string(value);
  return a;
}

LimitApproximation step_schedule(std::vector<std::pair<std::size_t, std::size_t>> steps) {
  if (steps.empty() || steps.front().first != 0)
    throw DomainError("a step schedule must start at s = 0");
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (steps[i].first <= steps[i - 1].first)
      throw DomainError("step schedule positions must increase");
  LimitApproximation a;
  a.g = [steps](std::size_t, std::size_t s) {
    std::size_t v = steps.front().second;
    for (const auto& [from, value] : steps) {
      if (from > s) break;
      v = value;
    }
    return v;
  };
  const std::size_t last = steps.back().first;
  a.stable_from = [last](std::size_t) { return last; };
  a.label = "steps";
  for (const auto& [from, value] : steps)
    a.label += " " + std::to_string(from) + ":" + std::to_string(value);
  return a;
}

std::size_t lg_star(std::size_t s) {
  std::size_t k = 0;
  double x = static_cast<double>(s);
  while (x > 1.0) {
    x = std::log2(x);
    ++k;
  }
  return k;
}

std::optional<std::size_t> lookback_limit(Lookback l, std::size_t s) {
  if (s == 0) return std::nullopt;
  if (l == Lookback::kFull) return s - 1;
  return std::min(lg_star(s), s - 1);
}

void validate(const DiagConfig& cfg) {
  if (cfg.enumeration.cls != DeviceClass::kCnfCfg)
    throw DomainError("the diagonal language is built against CNF-CFGs");
  if (cfg.enumeration.alphabet.size() != 1)
    throw DomainError("the diagonal language needs a one-symbol alphabet");
  if (!cfg.g.g || !cfg.g.stable_from) throw DomainError("missing limit approximation");
}

namespace {

class Engine {
 public:
  explicit Engine(const DiagConfig& cfg) : cfg_(cfg) {
    validate(cfg);
    std::size_t needed = cfg.g.limit(cfg.n);
    for (std::size_t s = 0; s <= cfg.max_s; ++s) needed = std::max(needed, cfg.g.g(cfg.n, s));
    if (needed > 0) devices_ = enumerate_devices(cfg.enumeration, needed);
    const Symbol& a = cfg.enumeration.alphabet.front();
    for (const auto& d : devices_) {
      Recognizer r(d);
      std::vector<bool> row(cfg.max_s + 1);
      for (std::size_t k = 0; k <= cfg.max_s; ++k) row[k] = r(repeat(a, k));
      table_.push_back(std::move(row));
    }
  }

  bool in_p(std::size_t i, std::size_t k) const { return table_[i - 1][k]; }
  const Device& device(std::size_t i) const { return devices_[i - 1]; }

  template <typename Earlier>
  DiagStep decide(std::size_t s, Earlier&& earlier) const {
    DiagStep st;
    st.s = s;
    st.t = cfg_.g.g(cfg_.n, s);
    if (auto last = lookback_limit(cfg_.lookback, s)) {
      for (std::size_t k = 0; k <= *last; ++k) {
        const DiagStep& e = earlier(k);
        if (e.outcome == DiagStep::Outcome::kActed && e.acted_on <= st.t) st.seen.push_back(e.acted_on);
      }
    }
    std::sort(st.seen.begin(), st.seen.end());
    st.seen.erase(std::unique(st.seen.begin(), st.seen.end()), st.seen.end());

    const std::size_t cap = static_cast<std::size_t>(std::bit_width(std::max<std::size_t>(s, 1)) - 1);
    if (cfg_.space_cap && st.seen.size() > cap) {
      st.outcome = DiagStep::Outcome::kCapReject;
      return st;
    }
    std::size_t i = 1;
    for (std::size_t j : st.seen) {
      if (j != i) break;
      ++i;
    }
    if (i > st.t) return st;  // every R_1..R_t already acted on
    st.outcome = DiagStep::Outcome::kActed;
    st.acted_on = i;
    st.member = !in_p(i, s);
    return st;
  }

  std::vector<DiagStep> run() const {
    std::vector<DiagStep> steps;
    steps.reserve(cfg_.max_s + 1);
    for (std::size_t s = 0; s <= cfg_.max_s; ++s)
      steps.push_back(decide(s, [&](std::size_t k) -> const DiagStep& { return steps[k]; }));
    return steps;
  }

  DiagStep fresh(std::size_t s) const {
    DiagStep scratch;
    return decide(s, [&](std::size_t k) -> const DiagStep& {
      scratch = fresh(k);
      return scratch;
    });
  }

 private:
  const DiagConfig& cfg_;
  std::vector<Device> devices_;
  std::vector<std::vector<bool>> table_;
};

void check_range(const DiagConfig& cfg, std::size_t s) {
  if (s > cfg.max_s)
    throw DomainError("input length " + std::to_string(s) + " exceeds max_s " + std::to_string(cfg.max_s));
}

}  // namespace

bool diag_member(const DiagConfig& cfg, std::size_t s) {
  check_range(cfg, s);
  DiagConfig trimmed = cfg;
  trimmed.max_s = s;
  return Engine(trimmed).run().back().member;
}

bool diag_member_unmemoized(const DiagConfig& cfg, std::size_t s) {
  check_range(cfg, s);
  return Engine(cfg).fresh(s).member;
}

DiagProfile diag_profile(const DiagConfig& cfg) {
  Engine engine(cfg);
  DiagProfile p;
  p.n = cfg.n;
  p.max_s = cfg.max_s;
  p.limit = cfg.g.limit(cfg.n);
  p.steps = engine.run();
  for (const auto& st : p.steps) {
    p.bits.push_back(st.member);
    if (st.outcome == DiagStep::Outcome::kCapReject) p.cap_rejections.push_back(st.s);
  }
  for (std::size_t i = 1; i <= p.limit; ++i) {
    RequirementStatus r;
    r.index = i;
    r.device = format_grammar(std::get<Cfg>(engine.device(i)));
    for (const auto& st : p.steps) {
      if (!r.acted_at && st.outcome == DiagStep::Outcome::kActed && st.acted_on == i) r.acted_at = st.s;
      if (!r.witness && st.member != engine.in_p(i, st.s)) r.witness = st.s;
    }
    r.satisfied = r.witness.has_value();
    if (!r.satisfied) r.reason = p.cap_rejections.empty() ? "max_s" : "space_cap";
    p.requirements.push_back(std::move(r));
  }
  return p;
}

DiagConfig diag_config_from_json(const nlohmann::json& j) {
  try {
    DiagConfig c;
    c.n = j.value("n", std::size_t{1});
    c.max_s = j.value("max_s", std::size_t{64});
    c.space_cap = j.value("space_cap", false);
    const std::string lb = j.value("lookback", std::string("full"));
    if (lb == "full") {
      c.lookback = Lookback::kFull;
    } else if (lb == "lg*") {
      c.lookback = Lookback::kLgStar;
    } else {
      throw ParseError("unknown lookback '" + lb + "'");
    }
    if (j.contains("alphabet")) c.enumeration.alphabet = j.at("alphabet").get<Alphabet>();
    if (j.contains("schedule")) {
      c.g = step_schedule(j.at("schedule").get<std::vector<std::pair<std::size_t, std::size_t>>>());
    } else if (j.contains("constant")) {
      c.g = constant_schedule(j.at("constant").get<std::size_t>());
    } else {
      throw ParseError("diagonal config needs 'schedule' or 'constant'");
    }
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagonal config: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("diagonal config: ") + e.what());
  }
}

DiagConfig load_diag_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return diag_config_from_json(j);
}

nlohmann::json diag_profile_to_json(const DiagProfile& p) {
  using nlohmann::json;
  std::string bits;
  for (bool b : p.bits) bits += b ? '1' : '0';
  json j{{"n", p.n}, {"max_s", p.max_s}, {"limit", p.limit}, {"bits", bits},
         {"cap_rejections", p.cap_rejections}};
  json steps = json::array();
  for (const auto& st : p.steps) {
    json e{{"s", st.s}, {"t", st.t}, {"seen", st.seen}, {"member", st.member}};
    switch (st.outcome) {
      case DiagStep::Outcome::kActed:
        e["outcome"] = "acted";
        e["requirement"] = st.acted_on;
        break;
      case DiagStep::Outcome::kCapReject:
        e["outcome"] = "cap_reject";
        break;
      case DiagStep::Outcome::kAllSatisfied:
        e["outcome"] = "all_satisfied";
        break;
    }
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  json reqs = json::array();
  for (const auto& r : p.requirements) {
    json e{{"index", r.index}, {"grammar", r.device}, {"satisfied", r.satisfied}};
    e["acted_at"] = r.acted_at ? json(*r.acted_at) : json(nullptr);
    e["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    if (!r.satisfied) e["reason"] = r.reason;
    reqs.push_back(std::move(e));
  }
  j["requirements"] = std::move(reqs);
  return j;
}

}  // namespace succinct
