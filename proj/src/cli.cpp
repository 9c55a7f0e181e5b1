#include "succinct/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "succinct/analysis.hpp"
#include "succinct/constructions.hpp"
#include "succinct/diagonal.hpp"
#include "succinct/io.hpp"
#include "succinct/tm_encodings.hpp"
#include "succinct/transforms.hpp"
#include "succinct/verify.hpp"

#ifndef SUCCINCT_DEFAULT_ZOO
#define SUCCINCT_DEFAULT_ZOO "zoo"
#endif

namespace succinct {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

using nlohmann::json;

struct Common {
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> budget;
  std::string emit;
  std::string report;
  std::string format = "text";
};

json alphabet_json(const Alphabet& a) { return json(a); }

std::string alphabet_text(const Alphabet& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i];
  return s + "}";
}

Alphabet parse_alphabet(const std::string& s) {
  if (s.find(',') == std::string::npos) return chars(s);
  Alphabet out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* v = std::getenv(kBudgetEnv);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long b = std::strtoull(v, &end, 10);
  if (*end != '\0' || b == 0) throw DomainError(std::string(kBudgetEnv) + " must be a positive integer");
  return b;
}

// Collects the report while a command runs.
class Run {
 public:
  Run(const std::vector<std::string>& args, const Common& c) : common_(c) {
    report_["tool"] = {{"name", "succinct"}, {"version", kToolVersion}};
    report_["command"] = args;
    report_["inputs"] = json::array();
    report_["outputs"] = json::object();
  }

  std::uint64_t budget(std::uint64_t fallback) const {
    return common_.budget ? *common_.budget : budget_from_env(fallback);
  }
  std::size_t horizon(std::size_t fallback) const { return common_.horizon.value_or(fallback); }

  std::string read_input(const std::string& path) {
    std::string text = read_file(path);
    report_["inputs"].push_back({{"path", path}, {"fnv1a64", fnv1a64_hex(text)}});
    return text;
  }

  json& outputs() { return report_["outputs"]; }

  void emit(const std::string& content) {
    if (common_.emit.empty()) return;
    write_file(common_.emit, content);
    outputs()["emitted"] = {{"path", common_.emit}, {"fnv1a64", fnv1a64_hex(content)}};
  }

  void check(const std::string& name, bool passed, json detail = json::object()) {
    detail["name"] = name;
    detail["passed"] = passed;
    checks_.push_back(std::move(detail));
  }

  void size_check(const std::string& name, std::size_t size, const std::string& bound, double value) {
    check(name, static_cast<double>(size) <= value + 1e-9,
          {{"kind", "size_bound"}, {"size", size}, {"bound", bound}, {"bound_value", value}});
  }

  void equiv_check(const std::string& name, const EquivResult& r) {
    json d{{"kind", "bounded_equivalence"},
           {"horizon", r.horizon},
           {"alphabet", alphabet_json(r.alphabet)},
           {"words_checked", r.words_checked},
           {"claim", claim(r.equal, r.horizon, r.alphabet)}};
    if (r.counterexample) {
      d["counterexample"] = to_string(*r.counterexample);
      d["first_accepts"] = r.first_accepts;
    }
    check(name, r.equal, std::move(d));
  }

  void sweep_check(const std::string& name, const SweepResult& r, std::size_t h, const Alphabet& a) {
    const bool ok = !r.counterexample;
    json d{{"kind", "bounded_equivalence"}, {"horizon", h},          {"alphabet", alphabet_json(a)},
           {"words_checked", r.checked},    {"subtrees_pruned", r.pruned}, {"claim", claim(ok, h, a)}};
    if (r.counterexample) d["counterexample"] = to_string(*r.counterexample);
    check(name, ok, std::move(d));
  }

  void budget_failure(const std::string& name, const std::string& what, std::optional<std::size_t> h) {
    json d{{"kind", "budget"}, {"error", what}};
    if (h) d["horizon"] = *h;
    check(name, false, std::move(d));
  }

  json finish(double seconds, int exit_code, const std::string& error) {
    std::size_t passed = 0;
    for (const auto& c : checks_) passed += c["passed"].get<bool>();
    report_["verification"] = {{"checks", checks_},
                               {"run", checks_.size()},
                               {"passed", passed},
                               {"failed", checks_.size() - passed}};
    report_["exit_code"] = exit_code;
    if (!error.empty()) report_["error"] = error;
    report_["wall_time_s"] = seconds;
    return report_;
  }

  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c["passed"].get<bool>()) return false;
    return true;
  }

 private:
  static std::string claim(bool equal, std::size_t h, const Alphabet& a) {
    return std::string(equal ? "equal" : "different") + " on all words of length <= " + std::to_string(h) +
           " over " + alphabet_text(a);
  }

  const Common& common_;
  json report_;
  std::vector<json> checks_;
};

json receipt_json(const ConversionReceipt& r) {
  return {{"conversion", r.conversion}, {"input_size", r.input_size},   {"output_size", r.output_size},
          {"bound", r.claimed_bound},   {"bound_value", r.bound_value}, {"bound_satisfied", r.bound_satisfied},
          {"note", r.note}};
}

json device_summary(const Device& d) {
  return {{"kind", kind_name(d)}, {"size", size_of(d)}, {"alphabet", alphabet_of(d)}};
}

std::string device_text(const Device& d) {
  if (const auto* g = std::get_if<Cfg>(&d)) return format_grammar(*g);
  if (const auto* g = std::get_if<Csg>(&d)) return format_grammar(*g);
  return automaton_to_json(d).dump(2) + "\n";
}

std::string zoo_dir() {
  const char* v = std::getenv(kZooEnv);
  return v && *v ? v : SUCCINCT_DEFAULT_ZOO;
}

TmMachine resolve_machine(Run& run, const std::string& name) {
  std::string path = name;
  if (!std::filesystem::exists(path)) path = zoo_dir() + "/" + name + ".json";
  const std::string text = run.read_input(path);
  try {
    return tm_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Device load_input_device(Run& run, const std::string& path) {
  run.read_input(path);
  return load_device(path);
}

// builtin:not-ww, builtin:w-dollar-w (need --n), builtin:<acc|oddacc|evenacc>:<machine>:<x or *>.
Subject resolve_subject(Run& run, const std::string& ref, std::optional<std::size_t> n) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) != 0) return load_input_device(run, ref);
  const std::string body = ref.substr(prefix.size());
  if (body == "not-ww" || body == "w-dollar-w") {
    if (!n) throw DomainError(ref + " needs --n");
    return body == "not-ww" ? not_ww_oracle(*n) : w_dollar_w_oracle(*n);
  }
  const auto c1 = body.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : body.find(':', c1 + 1);
  if (c2 == std::string::npos) throw DomainError("unknown builtin oracle '" + ref + "'");
  const std::string kind = body.substr(0, c1);
  AccSpec spec;
  if (kind == "acc") {
    spec.variant = AccVariant::kAcc;
  } else if (kind == "oddacc") {
    spec.variant = AccVariant::kOddAcc;
  } else if (kind == "evenacc") {
    spec.variant = AccVariant::kEvenAcc;
  } else {
    throw DomainError("unknown builtin oracle '" + ref + "'");
  }
  const TmMachine m = resolve_machine(run, body.substr(c1 + 1, c2 - c1 - 1));
  const std::string x = body.substr(c2 + 1);
  spec.per_input = x != "*";
  if (spec.per_input) spec.x = parse_word(x);
  return AccOracle(m, spec).as_predicate();
}

PredicateOracle predicate_of(const Device& d, const std::string& label) {
  auto r = std::make_shared<Recognizer>(d);
  return {label, alphabet_of(d), [r](const Word& w) { return (*r)(w); }};
}

template <typename F>
void guarded(Run& run, const std::string& name, std::optional<std::size_t> h, F&& f) {
  try {
    f();
  } catch (const BudgetExceeded& e) {
    run.budget_failure(name, e.what(), h);
  }
}

void require_unpruned_budget(std::size_t k, std::size_t h, std::uint64_t budget) {
  if (count_words_upto(k, h) > budget)
    throw BudgetExceeded(std::to_string(count_words_upto(k, h)) + " words exceed the budget of " +
                         std::to_string(budget));
}

// ---- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string what;
  std::optional<std::size_t> n;
  std::string mode = "exact";
  std::string alphabet;
  std::string machine;
  std::string input;
  bool all_inputs = false;
  bool complement = false;
};

std::size_t need_n(const std::optional<std::size_t>& n, const std::string& what) {
  if (!n) throw DomainError(what + " needs --n");
  return *n;
}

void construct_counter(Run& run, const ConstructArgs& a) {
  CounterGrammarSpec spec;
  spec.n = need_n(a.n, "counter");
  if (a.mode == "exact") {
    spec.mode = CounterMode::kExact;
  } else if (a.mode == "at-most") {
    spec.mode = CounterMode::kAtMost;
  } else {
    spec.mode = CounterMode::kAtLeast;
  }
  spec.alphabet = parse_alphabet(a.alphabet);
  const Cfg g = counter_cfg(spec);
  const std::size_t n = spec.n;
  const std::size_t counted = counter_recurrence(n);
  const double bound = 2 * std::log2(static_cast<double>(n));
  run.outputs()["grammar"] = {{"kind", "cfg"},
                              {"nonterminals", g.nonterminals.size()},
                              {"rules", g.rules.size()},
                              {"size", size_of(g)},
                              {"recurrence_count", counted},
                              {"note", "recurrence_count counts Y, which is a terminal in the abstract alphabet"}};
  run.emit(format_grammar(g));
  run.size_check("recurrence count <= 2 lg n", counted, "2*lg(n)", bound);

  const Alphabet sigma = spec.alphabet.empty() ? Alphabet{"Y"} : spec.alphabet;
  const CounterMode mode = spec.mode;
  PredicateOracle ref{"counter " + a.mode + " " + std::to_string(n), sigma, [n, mode](const Word& w) {
                        switch (mode) {
                          case CounterMode::kExact: return w.size() == n;
                          case CounterMode::kAtMost: return w.size() <= n;
                          case CounterMode::kAtLeast: return w.size() >= n;
                        }
                        return false;
                      }};
  const std::size_t h = run.horizon(sigma.size() == 1 ? n + 1 : 8);
  guarded(run, "language", h, [&] {
    require_unpruned_budget(sigma.size(), h, run.budget(kDefaultWordBudget));
    run.sweep_check("language", sweep_grammar(g, ref, h), h, sigma);
  });
}

void construct_witness(Run& run, const GapWitness& w, std::size_t default_h) {
  json out{{"label", w.label}, {"size", w.size}, {"bound", w.claimed_bound}, {"bound_value", w.bound_value}};
  std::visit(
      [&](const auto& g) {
        out["nonterminals"] = g.nonterminals.size();
        out["rules"] = g.rules.size();
        run.emit(format_grammar(g));
      },
      w.grammar);
  run.outputs()["grammar"] = out;
  run.size_check("size bound", w.size, w.claimed_bound, w.bound_value);
  const std::size_t h = run.horizon(default_h);
  const std::uint64_t budget = run.budget(kDefaultWordBudget);
  guarded(run, "language", h, [&] {
    if (const auto* g = std::get_if<Cfg>(&w.grammar)) {
      require_unpruned_budget(w.reference.alphabet.size(), h, budget);
      run.sweep_check("language", sweep_grammar(*g, w.reference, h), h, w.reference.alphabet);
    } else {
      const Device d = std::get<Csg>(w.grammar);
      run.equiv_check("language", bounded_equiv(d, w.reference, {h, w.reference.alphabet}, budget));
    }
  });
}

void construct_acc(Run& run, const ConstructArgs& a) {
  if (a.machine.empty()) throw DomainError(a.what + " needs --machine");
  const TmMachine m = resolve_machine(run, a.machine);
  AccSpec spec;
  spec.variant = a.what == "acc-complement" ? AccVariant::kAcc
                 : a.what == "oddacc"       ? AccVariant::kOddAcc
                                            : AccVariant::kEvenAcc;
  spec.per_input = !a.all_inputs;
  if (spec.per_input) spec.x = parse_word(a.input);
  const bool complement = a.what == "acc-complement" || a.complement;
  const Cfg g =
      complement_acc_cfg(m, spec, complement ? AccPolarity::kComplement : AccPolarity::kPositivePair);
  const AccOracle oracle(m, spec);
  run.outputs()["language"] = (complement ? "complement of " : "") + describe(spec);
  run.outputs()["grammar"] = {{"kind", "cfg"},
                              {"nonterminals", g.nonterminals.size()},
                              {"rules", g.rules.size()},
                              {"size", size_of(g)},
                              {"alphabet", oracle.alphabet()}};
  run.emit(format_grammar(g));

  std::size_t default_h = 8;
  if (spec.per_input) {
    const RunResult r = run_trace(m, spec.x);
    if (r.trace) {
      const std::size_t len = encode_trace(m, *r.trace).size();
      run.outputs()["encoding_length"] = len;
      default_h = std::min<std::size_t>(len + 2, 14);
    } else {
      run.outputs()["encoding_length"] = nullptr;
    }
  }
  const std::size_t h = run.horizon(default_h);
  run.sweep_check("language vs " + oracle.as_predicate().label, sweep_acc_grammar(g, oracle, complement, h), h,
                  oracle.alphabet());
}

void construct(Run& run, const ConstructArgs& a) {
  if (a.what == "counter") return construct_counter(run, a);
  if (a.what == "complement-ww") {
    const std::size_t n = need_n(a.n, a.what);
    return construct_witness(run, complement_ww_witness(n), 2 * n + 2);
  }
  if (a.what == "w-dollar-w") {
    const std::size_t n = need_n(a.n, a.what);
    return construct_witness(run, w_dollar_w_witness(n), 2 * n + 1);
  }
  construct_acc(run, a);
}

// ---- convert ----------------------------------------------------------------

struct ConvertArgs {
  std::string what;
  std::string in;
  std::string in2;
  std::string op = "and";
};

template <typename T>
const T& expect(const Device& d, const std::string& what) {
  const T* p = std::get_if<T>(&d);
  if (!p) throw DomainError(what + " does not accept a " + kind_name(d));
  return *p;
}

void convert(Run& run, const ConvertArgs& a) {
  const Device in = load_input_device(run, a.in);
  run.outputs()["input"] = device_summary(in);
  Device out;
  Subject reference = in;
  std::optional<ConversionReceipt> receipt;

  if (a.what == "nfa2dfa") {
    const Nfa n = std::holds_alternative<Dfa>(in) ? nfa_view(std::get<Dfa>(in)) : expect<Nfa>(in, a.what);
    auto [d, r] = nfa_to_dfa(n);
    out = std::move(d);
    receipt = r;
  } else if (a.what == "cfg2pda") {
    auto [p, r] = cfg_to_pda(expect<Cfg>(in, a.what));
    out = std::move(p);
    receipt = r;
  } else if (a.what == "pda2cfg") {
    const Pda p = std::holds_alternative<Dpda>(in) ? pda_view(std::get<Dpda>(in)) : expect<Pda>(in, a.what);
    auto [g, r] = pda_to_cfg(p);
    out = std::move(g);
    receipt = r;
  } else if (a.what == "dpda-complement") {
    auto [d, r] = dpda_complement(expect<Dpda>(in, a.what));
    out = std::move(d);
    receipt = r;
    auto base = predicate_of(in, "input");
    reference = PredicateOracle{"complement of input", base.alphabet,
                                [base](const Word& w) { return !base.accepts(w); }};
  } else if (a.what == "dfa-min") {
    const Dfa& d = expect<Dfa>(in, a.what);
    out = dfa_minimize(d);
    run.size_check("no larger than the input", size_of(out), "input size", static_cast<double>(size_of(in)));
  } else {
    if (a.in2.empty()) throw DomainError("dfa-product needs --in2");
    const Device in2 = load_input_device(run, a.in2);
    run.outputs()["input2"] = device_summary(in2);
    const bool conj = a.op == "and";
    auto [d, r] = dfa_product(expect<Dfa>(in, a.what), expect<Dfa>(in2, a.what),
                              conj ? ProductOp::kAnd : ProductOp::kOr);
    out = std::move(d);
    receipt = r;
    auto l = predicate_of(in, "a");
    auto rr = predicate_of(in2, "b");
    reference = PredicateOracle{std::string("input ") + (conj ? "and" : "or") + " input2", l.alphabet,
                                [l, rr, conj](const Word& w) {
                                  return conj ? (l.accepts(w) && rr.accepts(w)) : (l.accepts(w) || rr.accepts(w));
                                }};
  }

  run.outputs()["device"] = device_summary(out);
  if (receipt) {
    run.outputs()["receipt"] = receipt_json(*receipt);
    run.check("receipt bound", receipt->bound_satisfied,
              {{"kind", "size_bound"},
               {"size", receipt->output_size},
               {"bound", receipt->claimed_bound},
               {"bound_value", receipt->bound_value}});
  }
  run.emit(device_text(out));
  const std::size_t h = run.horizon(8);
  guarded(run, "language", h, [&] {
    run.equiv_check("language", bounded_equiv(out, reference, {h, {}}, run.budget(kDefaultWordBudget)));
  });
}

// ---- verify / gap / estimate ------------------------------------------------

struct VerifyArgs {
  std::string a, b;
  std::optional<std::size_t> n;
  std::string alphabet;
};

void verify(Run& run, const VerifyArgs& v) {
  const Subject a = resolve_subject(run, v.a, v.n);
  const Subject b = resolve_subject(run, v.b, v.n);
  run.outputs()["a"] = subject_label(a);
  run.outputs()["b"] = subject_label(b);
  const std::size_t h = run.horizon(8);
  guarded(run, "equivalence", h, [&] {
    run.equiv_check("equivalence",
                    bounded_equiv(a, b, {h, parse_alphabet(v.alphabet)}, run.budget(kDefaultWordBudget)));
  });
}

DeviceClass parse_class(const std::string& s) {
  if (s == "dfa") return DeviceClass::kDfa;
  if (s == "nfa") return DeviceClass::kNfa;
  return DeviceClass::kCnfCfg;
}

struct GapArgs {
  std::string target;
  std::optional<std::size_t> n;
  std::vector<std::string> classes{"dfa", "nfa"};
  std::string alphabet;
  std::size_t max_size = 12;
};

void gap(Run& run, const GapArgs& g) {
  const Subject target = resolve_subject(run, g.target, g.n);
  run.outputs()["target"] = subject_label(target);
  const std::size_t h = run.horizon(8);
  json results = json::array();
  for (const auto& c : g.classes) {
    const DeviceClass cls = parse_class(c);
    const std::string name = "minimal " + class_name(cls);
    guarded(run, name, h, [&] {
      const auto r = min_device_search(target, cls, {h, parse_alphabet(g.alphabet)},
                                       run.budget(kDefaultWordBudget), g.max_size);
      json e{{"class", class_name(cls)}, {"size", r.size},         {"exact", r.exact},
             {"method", r.method},       {"candidates", r.candidates}, {"witness", device_text(r.witness)}};
      if (!r.exact) e["horizon"] = r.horizon;
      e["claim"] = r.exact ? "minimal for the language"
                           : "minimal among devices agreeing on words of length <= " + std::to_string(r.horizon);
      results.push_back(e);
      run.check(name, true, {{"kind", "search"}, {"exact", r.exact}, {"size", r.size}});
    });
  }
  run.outputs()["searches"] = results;
}

struct EstimateArgs {
  std::string pair = "dfa-nfa";
  std::size_t n = 2;
  std::string alphabet = "ab";
  std::uint64_t search_budget = EstimateOptions{}.search_budget;
  std::size_t max_rows = EstimateOptions{}.max_rows;
};

void estimate(Run& run, const EstimateArgs& e) {
  const DevicePair pair = e.pair == "dfa-nfa"   ? DevicePair::kDfaOverNfa
                          : e.pair == "nfa-dfa" ? DevicePair::kNfaOverDfa
                                                : DevicePair::kCnfOverDfa;
  EstimateOptions o;
  o.enumeration_budget = run.budget(kDefaultEnumerationBudget);
  o.search_budget = e.search_budget;
  o.max_rows = e.max_rows;
  const std::size_t h = run.horizon(8);
  const auto r = bounding_estimate(pair, e.n, {h, parse_alphabet(e.alphabet)}, o);
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"index", row.index}, {"device", row.device}, {"device_size", row.device_size}, {"exact", row.exact}};
    j["min_size"] = row.min_size ? json(*row.min_size) : json(nullptr);
    if (!row.failure.empty()) j["failure"] = row.failure;
    rows.push_back(j);
  }
  json out{{"pair", pair_name(pair)},
           {"n", r.n},
           {"horizon", h},
           {"alphabet", r.horizon.alphabet},
           {"max", r.max},
           {"devices", r.devices},
           {"distinct_languages", r.distinct_languages},
           {"failures", r.failures},
           {"truncated", r.truncated},
           {"all_exact", r.all_exact},
           {"rows", rows}};
  out["max_is"] = r.truncated ? "a lower bound (enumeration budget reached)" : "the maximum over the enumeration";
  if (!r.all_exact)
    out["note"] = "some minima only agree on words of length <= " + std::to_string(h);
  if (r.max_witness) out["max_witness"] = {{"index", r.max_witness->index}, {"device", r.max_witness->device}};
  run.outputs()["estimate"] = out;
}

// ---- diagonalize / encode-tm -------------------------------------------------

void diagonalize(Run& run, const std::string& path, std::optional<std::size_t> max_s) {
  const std::string text = run.read_input(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  DiagConfig cfg = diag_config_from_json(j);
  if (max_s) cfg.max_s = *max_s;
  const DiagProfile p = diag_profile(cfg);
  run.outputs()["profile"] = diag_profile_to_json(p);
  run.emit(diag_profile_to_json(p).dump(2) + "\n");
  for (const auto& r : p.requirements) {
    json d{{"kind", "diagonal_requirement"}, {"max_s", p.max_s}};
    if (r.witness) d["witness"] = *r.witness;
    if (!r.satisfied) d["reason"] = r.reason;
    run.check("R_" + std::to_string(r.index), r.satisfied, std::move(d));
  }
}

std::string config_text(const TmMachine& m, const TmConfig& c) {
  Word w;
  for (std::size_t i = 0; i < c.tape.size(); ++i)
    w.push_back(static_cast<int>(i) == c.head ? composite_name(m, c.state, c.tape[i]) : m.tape[c.tape[i]]);
  return to_string(w);
}

void encode_tm(Run& run, const std::string& machine, const std::string& input, std::size_t steps) {
  const TmMachine m = resolve_machine(run, machine);
  const Word x = parse_word(input);
  TmBounds bounds;
  bounds.steps = steps;
  const RunResult r = run_trace(m, x, bounds);
  json& out = run.outputs();
  out["input"] = to_string(x);
  if (!r.trace) {
    out["halted"] = false;
    out["divergence"] = r.diverged == Divergence::kSteps ? "step bound" : "space bound";
    return;
  }
  const TmTrace& t = *r.trace;
  out["halted"] = true;
  out["accepted"] = t.accepted;
  out["steps"] = t.steps;
  out["width"] = t.width;
  json configs = json::array();
  for (const auto& c : t.configs) configs.push_back(config_text(m, c));
  out["configs"] = configs;
  const Word enc = encode_trace(m, t);
  out["encoding"] = to_string(enc);
  out["encoding_length"] = enc.size();
  run.emit(to_string(enc) + "\n");
  const auto back = decode_configs(m, enc);
  run.check("decode round trip", back && *back == t.configs, {{"kind", "round_trip"}});
}

void print_text(std::ostream& out, const json& report) {
  for (const auto& c : report["verification"]["checks"]) {
    out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
    if (c.contains("claim")) {
      out << ": " << c["claim"].get<std::string>();
    } else if (c.contains("bound")) {
      out << ": size " << c["size"] << " vs " << c["bound"].get<std::string>() << " = " << c["bound_value"];
    }
    if (c.contains("counterexample")) out << " (counterexample \"" << c["counterexample"].get<std::string>() << "\")";
    if (c.contains("witness")) out << ": witness a^" << c["witness"];
    if (c.contains("reason")) out << ": unsatisfied (" << c["reason"].get<std::string>() << ")";
    if (c.contains("error")) out << " (" << c["error"].get<std::string>() << ")";
    out << "\n";
  }
  for (const auto& [key, value] : report["outputs"].items()) {
    std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    if (v.size() > 160) v = v.substr(0, 157) + "...";
    out << key << ": " << v << "\n";
  }
  const auto& v = report["verification"];
  out << "checks: " << v["passed"] << "/" << v["run"] << " passed\n";
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--horizon", c.horizon, "Verification horizon (maximum word length)");
  sub->add_option("--budget", c.budget, std::string("Word or candidate budget (default from ") + kBudgetEnv + ")")
      ->check(CLI::PositiveNumber);
  sub->add_option("--emit", c.emit, "Write the produced artifact here");
  sub->add_option("--report", c.report, "Write the JSON report here");
  sub->add_option("--format", c.format, "Console output")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Succinctness workbench: constructions, conversions and bounded verification", "succinct"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a grammar family member and verify it");
  construct_cmd
      ->add_option("family", ca.what, "counter | complement-ww | w-dollar-w | acc-complement | oddacc | evenacc")
      ->required()
      ->check(CLI::IsMember({"counter", "complement-ww", "w-dollar-w", "acc-complement", "oddacc", "evenacc"}));
  construct_cmd->add_option("--n", ca.n, "Family parameter");
  construct_cmd->add_option("--mode", ca.mode, "Counter mode")->check(CLI::IsMember({"exact", "at-most", "at-least"}));
  construct_cmd->add_option("--alphabet", ca.alphabet, "Counter terminals (\"ab\" or \"a,b\")");
  construct_cmd->add_option("--machine", ca.machine, "Machine JSON path or zoo name");
  construct_cmd->add_option("--input", ca.input, "Machine input word");
  construct_cmd->add_flag("--all-inputs", ca.all_inputs, "Union over all inputs");
  construct_cmd->add_flag("--complement", ca.complement, "Complement grammar for oddacc / evenacc");
  add_common(construct_cmd, common);

  ConvertArgs cv;
  auto* convert_cmd = app.add_subcommand("convert", "Run a conversion and check its receipt");
  convert_cmd
      ->add_option("conversion", cv.what, "nfa2dfa | cfg2pda | pda2cfg | dpda-complement | dfa-min | dfa-product")
      ->required()
      ->check(CLI::IsMember({"nfa2dfa", "cfg2pda", "pda2cfg", "dpda-complement", "dfa-min", "dfa-product"}));
  convert_cmd->add_option("--in", cv.in, "Input device")->required();
  convert_cmd->add_option("--in2", cv.in2, "Second DFA for dfa-product");
  convert_cmd->add_option("--op", cv.op, "Product operation")->check(CLI::IsMember({"and", "or"}));
  add_common(convert_cmd, common);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Bounded equivalence of two devices or oracles");
  verify_cmd->add_option("--a", va.a, "Device path or builtin:<name>")->required();
  verify_cmd->add_option("--b", va.b, "Device path or builtin:<name>")->required();
  verify_cmd->add_option("--n", va.n, "Parameter for builtin:not-ww / builtin:w-dollar-w");
  verify_cmd->add_option("--alphabet", va.alphabet, "Alphabet of the horizon (default: union)");
  add_common(verify_cmd, common);

  GapArgs ga;
  auto* gap_cmd = app.add_subcommand("gap", "Minimal device sizes for one target language");
  gap_cmd->add_option("--target", ga.target, "Device path or builtin:<name>")->required();
  gap_cmd->add_option("--n", ga.n, "Parameter for builtin oracles");
  gap_cmd->add_option("--class", ga.classes, "Device classes to search")
      ->check(CLI::IsMember({"dfa", "nfa", "cnf"}));
  gap_cmd->add_option("--alphabet", ga.alphabet, "Alphabet of the horizon (default: the target's)");
  gap_cmd->add_option("--max-size", ga.max_size, "Largest size searched");
  add_common(gap_cmd, common);

  EstimateArgs ea;
  auto* estimate_cmd = app.add_subcommand("estimate", "Finite-horizon bounding-function estimate");
  estimate_cmd->add_option("--pair", ea.pair, "dfa-nfa | nfa-dfa | cnf-dfa")
      ->check(CLI::IsMember({"dfa-nfa", "nfa-dfa", "cnf-dfa"}));
  estimate_cmd->add_option("--n", ea.n, "Size of the enumerated devices")->required();
  estimate_cmd->add_option("--alphabet", ea.alphabet, "Alphabet");
  estimate_cmd->add_option("--search-budget", ea.search_budget, "Candidates per minimal-device search");
  estimate_cmd->add_option("--max-rows", ea.max_rows, "Rows kept in the report");
  add_common(estimate_cmd, common);

  std::string diag_config;
  std::optional<std::size_t> diag_max_s;
  auto* diag_cmd = app.add_subcommand("diagonalize", "Profile the diagonal language of a config");
  diag_cmd->add_option("--config", diag_config, "DiagConfig JSON")->required();
  diag_cmd->add_option("--max-s", diag_max_s, "Override max_s");
  add_common(diag_cmd, common);

  std::string tm_machine, tm_input;
  std::size_t tm_steps = TmBounds{}.steps;
  auto* encode_cmd = app.add_subcommand("encode-tm", "Trace and encoding of a machine run");
  encode_cmd->add_option("--machine", tm_machine, "Machine JSON path or zoo name")->required();
  encode_cmd->add_option("--input", tm_input, "Input word");
  encode_cmd->add_option("--steps", tm_steps, "Step bound");
  add_common(encode_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    CommandResult r;
    r.exit_code = code == 0 ? kExitOk : kExitUsage;
    r.report = {{"command", args}, {"exit_code", r.exit_code}, {"error", e.what()}};
    return r;
  }

  Run run(args, common);
  int code = kExitOk;
  std::string error;
  try {
    if (*construct_cmd) construct(run, ca);
    if (*convert_cmd) convert(run, cv);
    if (*verify_cmd) verify(run, va);
    if (*gap_cmd) gap(run, ga);
    if (*estimate_cmd) estimate(run, ea);
    if (*diag_cmd) diagonalize(run, diag_config, diag_max_s);
    if (*encode_cmd) encode_tm(run, tm_machine, tm_input, tm_steps);
    code = run.all_passed() ? kExitOk : kExitFailed;
  } catch (const ParseError& e) {
    code = kExitParse;
    error = std::string("parse error: ") + e.what();
  } catch (const DomainError& e) {
    code = kExitUsage;
    error = std::string("domain error: ") + e.what();
  } catch (const InputError& e) {
    code = kExitUsage;
    error = std::string("input error: ") + e.what();
  } catch (const ValidationError& e) {
    code = kExitUsage;
    error = std::string("invalid device: ") + e.what();
  } catch (const BudgetExceeded& e) {
    code = kExitFailed;
    error = std::string("budget exceeded: ") + e.what();
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CommandResult result{code, run.finish(secs, code, error)};
  if (!error.empty()) err << error << "\n";
  if (common.format == "json") {
    out << result.report.dump(2) << "\n";
  } else if (error.empty()) {
    print_text(out, result.report);
  }
  if (!common.report.empty()) {
    try {
      write_file(common.report, result.report.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "cannot write report: " << e.what() << "\n";
      if (result.exit_code == kExitOk) result.exit_code = kExitUsage;
    }
  }
  return result;
}

}  // namespace succinct
