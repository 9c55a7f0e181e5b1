#include "succinct/tm_encodings.hpp"

#include <algorithm>
#include <set>

#include "succinct/io.hpp"

namespace succinct {
namespace {

int index_of(const std::vector<std::string>& names, const std::string& s, const char* what) {
  auto it = std::find(names.begin(), names.end(), s);
  if (it == names.end()) throw ParseError(std::string("unknown ") + what + " '" + s + "'");
  return static_cast<int>(it - names.begin());
}

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

int count_composites(const CellCodec& codec, const std::vector<int>& cells) {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                        [&](int c) { return codec.is_composite(c); }));
}

}  // namespace

std::vector<std::string> validate(const TmMachine& m) {
  std::vector<std::string> v;
  const int nq = m.num_states(), nt = m.num_tape();
  if (nq == 0) v.push_back("no states");
  if (nt == 0) v.push_back("empty tape alphabet");
  if (!v.empty()) return v;
  auto in_range = [](int x, int n) { return x >= 0 && x < n; };
  if (!in_range(m.blank, nt)) v.push_back("blank is not a tape symbol");
  for (int q : {m.start, m.accept, m.reject})
    if (!in_range(q, nq)) v.push_back("start/accept/reject state out of range");
  if (m.accept == m.reject) v.push_back("accept and reject states coincide");
  std::set<std::string> tape_names(m.tape.begin(), m.tape.end());
  if (tape_names.size() != m.tape.size()) v.push_back("duplicate tape symbol");
  if (std::set<std::string>(m.states.begin(), m.states.end()).size() != m.states.size())
    v.push_back("duplicate state name");
  if (tape_names.count("$")) v.push_back("'$' is reserved as the block separator");
  for (const auto& s : m.input) {
    if (!tape_names.count(s)) v.push_back("input symbol '" + s + "' is not a tape symbol");
    else if (in_range(m.blank, nt) && s == m.tape[m.blank]) v.push_back("blank in input alphabet");
  }
  if (static_cast<int>(m.delta.size()) != nq) {
    v.push_back("transition table has the wrong number of rows");
    return v;
  }
  for (int q = 0; q < nq; ++q) {
    if (static_cast<int>(m.delta[q].size()) != nt) {
      v.push_back("transition row of '" + m.states[q] + "' has the wrong width");
      continue;
    }
    for (int s = 0; s < nt; ++s) {
      const auto& a = m.delta[q][s];
      if (!a) {
        if (!m.halting(q))
          v.push_back("no transition for (" + m.states[q] + ", " + m.tape[s] + ")");
        continue;
      }
      if (!in_range(a->to, nq) || !in_range(a->write, nt))
        v.push_back("transition target out of range at (" + m.states[q] + ", " + m.tape[s] + ")");
    }
  }
  for (int q = 0; q < nq && v.empty(); ++q) {
    for (int s = 0; s < nt; ++s) {
      if (tape_names.count(composite_name(m, q, s))) {
        v.push_back("composite " + composite_name(m, q, s) + " clashes with a tape symbol");
      }
    }
  }
  return v;
}

TmMachine tm_from_json(const nlohmann::json& j) {
  try {
    TmMachine m;
    m.states = j.at("states").get<std::vector<std::string>>();
    m.tape = j.at("tapeAlphabet").get<Alphabet>();
    m.blank = index_of(m.tape, j.at("blank").get<std::string>(), "blank");
    m.input = j.at("inputAlphabet").get<Alphabet>();
    m.start = index_of(m.states, j.at("start").get<std::string>(), "state");
    m.accept = index_of(m.states, j.at("accept").get<std::string>(), "state");
    m.reject = index_of(m.states, j.at("reject").get<std::string>(), "state");
    m.delta.assign(m.states.size(), std::vector<std::optional<TmAction>>(m.tape.size()));
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) throw ParseError("transition must be [q, s, p, t, L|R]");
      const int q = index_of(m.states, t[0].get<std::string>(), "state");
      const int s = index_of(m.tape, t[1].get<std::string>(), "tape symbol");
      const std::string dir = t[4].get<std::string>();
      if (dir != "L" && dir != "R") throw ParseError("move must be L or R, got '" + dir + "'");
      if (m.delta[q][s]) throw ParseError("two transitions for (" + m.states[q] + ", " + m.tape[s] + ")");
      m.delta[q][s] = TmAction{index_of(m.states, t[2].get<std::string>(), "state"),
                               index_of(m.tape, t[3].get<std::string>(), "tape symbol"),
                               dir == "L" ? Move::kLeft : Move::kRight};
    }
    auto v = validate(m);
    if (!v.empty()) throw ParseError("invalid machine: " + v.front());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed machine JSON: ") + e.what());
  }
}

nlohmann::json tm_to_json(const TmMachine& m) {
  nlohmann::json t = nlohmann::json::array();
  for (int q = 0; q < m.num_states(); ++q) {
    for (int s = 0; s < m.num_tape(); ++s) {
      const auto& a = m.delta[q][s];
      if (!a) continue;
      t.push_back({m.states[q], m.tape[s], m.states[a->to], m.tape[a->write],
                   a->move == Move::kLeft ? "L" : "R"});
    }
  }
  return {{"states", m.states},        {"tapeAlphabet", m.tape},
          {"blank", m.tape[m.blank]},  {"inputAlphabet", m.input},
          {"transitions", t},          {"start", m.states[m.start]},
          {"accept", m.states[m.accept]}, {"reject", m.states[m.reject]}};
}

TmMachine load_tm(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return tm_from_json(j);
}

TmConfig initial_config(const TmMachine& m, const Word& x, std::size_t width) {
  TmConfig c;
  c.state = m.start;
  c.head = 0;
  width = std::max({width, x.size(), std::size_t{1}});
  c.tape.assign(width, m.blank);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::find(m.input.begin(), m.input.end(), x[i]) == m.input.end())
      throw InputError("'" + x[i] + "' is not an input symbol");
    c.tape[i] = index_of(m.tape, x[i], "tape symbol");
  }
  return c;
}

std::optional<TmConfig> succ(const TmMachine& m, const TmConfig& c) {
  if (m.halting(c.state)) return c;
  const auto& a = m.delta[c.state][c.tape[c.head]];
  TmConfig n = c;
  n.tape[c.head] = a->write;
  n.state = a->to;
  if (a->move == Move::kLeft) {
    n.head = std::max(0, c.head - 1);
  } else {
    if (c.head + 1 >= static_cast<int>(c.tape.size())) return std::nullopt;
    n.head = c.head + 1;
  }
  return n;
}

RunResult run_trace(const TmMachine& m, const Word& x, const TmBounds& bounds) {
  TmConfig c = initial_config(m, x, 1);
  c.tape.resize(std::max<std::size_t>(x.size(), 1), m.blank);
  std::vector<TmConfig> seen{c};
  std::size_t steps = 0;
  int max_head = 0;
  while (!m.halting(c.state)) {
    if (steps == bounds.steps) return {std::nullopt, Divergence::kSteps};
    const auto& a = m.delta[c.state][c.tape[c.head]];
    c.tape[c.head] = a->write;
    c.state = a->to;
    if (a->move == Move::kLeft) {
      c.head = std::max(0, c.head - 1);
    } else {
      ++c.head;
      if (static_cast<std::size_t>(c.head) >= bounds.space) return {std::nullopt, Divergence::kSpace};
      if (c.head >= static_cast<int>(c.tape.size())) c.tape.push_back(m.blank);
    }
    max_head = std::max(max_head, c.head);
    ++steps;
    seen.push_back(c);
  }
  TmTrace t;
  t.input = x;
  t.steps = steps;
  t.accepted = c.state == m.accept;
  t.width = std::max({static_cast<std::size_t>(max_head) + 1, x.size(), std::size_t{1}});
  for (auto& s : seen) s.tape.resize(t.width, m.blank);
  if (seen.size() % 2 == 1) seen.push_back(seen.back());
  t.configs = std::move(seen);
  return {std::move(t), Divergence::kNone};
}

std::string composite_name(const TmMachine& m, int q, int s) {
  return "(" + m.states[q] + "," + m.tape[s] + ")";
}

Alphabet encoding_alphabet(const TmMachine& m) {
  Alphabet a = m.tape;
  for (int q = 0; q < m.num_states(); ++q)
    for (int s = 0; s < m.num_tape(); ++s) a.push_back(composite_name(m, q, s));
  a.push_back("$");
  return a;
}

CellCodec::CellCodec(const TmMachine& m) : tape(m.num_tape()), states(m.num_states()) {}

std::vector<int> config_cells(const CellCodec& codec, const TmConfig& c) {
  std::vector<int> cells(c.tape.begin(), c.tape.end());
  cells[c.head] = codec.composite(c.state, c.tape[c.head]);
  return cells;
}

std::optional<TmConfig> config_from_cells(const CellCodec& codec, const std::vector<int>& cells) {
  if (cells.empty() || count_composites(codec, cells) != 1) return std::nullopt;
  TmConfig c;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (codec.is_composite(cells[i])) {
      c.head = static_cast<int>(i);
      c.state = codec.state_of(cells[i]);
    }
    c.tape.push_back(codec.symbol_of(cells[i]));
  }
  return c;
}

Word encode_configs(const TmMachine& m, const std::vector<TmConfig>& configs) {
  const CellCodec codec(m);
  const Alphabet names = encoding_alphabet(m);
  Word w{"$"};
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto cells = config_cells(codec, configs[i]);
    if (i % 2 == 1) std::reverse(cells.begin(), cells.end());
    for (int c : cells) w.push_back(names[c]);
    w.push_back("$");
  }
  return w;
}

Word encode_trace(const TmMachine& m, const TmTrace& t) { return encode_configs(m, t.configs); }

namespace {

// Splits an encoded word into blocks of cell ids (written orientation).
// nullopt on foreign symbols or when w does not start and end with $.
std::optional<std::vector<std::vector<int>>> split_blocks(const std::map<Symbol, int>& ids,
                                                          int dollar, const Word& w,
                                                          bool need_final_dollar) {
  if (w.empty() || w.front() != "$") return std::nullopt;
  if (need_final_dollar && (w.size() < 2 || w.back() != "$")) return std::nullopt;
  std::vector<std::vector<int>> blocks(1);
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto it = ids.find(w[i]);
    if (it == ids.end()) return std::nullopt;
    if (it->second == dollar) {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(it->second);
    }
  }
  if (need_final_dollar) blocks.pop_back();
  return blocks;
}

std::map<Symbol, int> symbol_ids(const Alphabet& a) {
  std::map<Symbol, int> ids;
  for (std::size_t i = 0; i < a.size(); ++i) ids[a[i]] = static_cast<int>(i);
  return ids;
}

}  // namespace

std::optional<std::vector<TmConfig>> decode_configs(const TmMachine& m, const Word& w) {
  const CellCodec codec(m);
  auto blocks = split_blocks(symbol_ids(encoding_alphabet(m)), codec.dollar(), w, true);
  if (!blocks || blocks->empty()) return std::nullopt;
  std::vector<TmConfig> out;
  for (std::size_t i = 0; i < blocks->size(); ++i) {
    auto cells = (*blocks)[i];
    if (i % 2 == 1) std::reverse(cells.begin(), cells.end());
    auto c = config_from_cells(codec, cells);
    if (!c) return std::nullopt;
    out.push_back(std::move(*c));
  }
  return out;
}

std::string describe(const AccSpec& spec) {
  std::string name = spec.variant == AccVariant::kAcc      ? "acc"
                     : spec.variant == AccVariant::kOddAcc ? "oddacc"
                                                           : "evenacc";
  if (!spec.per_input) return name + "_all";
  return name + "(" + to_string(spec.x) + ")";
}

AccOracle::AccOracle(const TmMachine& m, AccSpec spec, const TmBounds& bounds)
    : m_(m), spec_(std::move(spec)), codec_(m), alphabet_(encoding_alphabet(m)) {
  auto v = validate(m_);
  if (!v.empty()) throw ValidationError(v.front());
  ids_ = symbol_ids(alphabet_);
  if (!spec_.per_input) return;
  const RunResult run = run_trace(m_, spec_.x, bounds);
  width_ = run.trace ? run.trace->width : std::max<std::size_t>(spec_.x.size(), 1);
  const TmConfig init = initial_config(m_, spec_.x, width_);
  init_cells_ = config_cells(codec_, init);
  if (spec_.variant != AccVariant::kAcc) return;
  // The width-pinned chain from init either accepts, or provably never does
  // (reject, falling off the right end, or a repeated configuration).
  std::set<std::pair<std::vector<int>, std::pair<int, int>>> visited;
  std::optional<TmConfig> c = init;
  chain_steps_ = 0;
  while (c && !m_.halting(c->state)) {
    if (!visited.insert({c->tape, {c->head, c->state}}).second) break;
    c = succ(m_, *c);
    ++chain_steps_;
  }
  chain_accepts_ = c && c->state == m_.accept;
  chain_last_ = init;
  chain_word_ = {"$"};
}

bool AccOracle::initial_shape_prefix(const std::vector<int>& cells) const {
  if (cells.empty()) return true;
  if (!codec_.is_composite(cells[0]) || codec_.state_of(cells[0]) != m_.start) return false;
  const int first = codec_.symbol_of(cells[0]);
  auto is_input = [&](int c) {
    return !codec_.is_composite(c) && c != m_.blank &&
           std::find(m_.input.begin(), m_.input.end(), m_.tape[c]) != m_.input.end();
  };
  if (first != m_.blank && !is_input(first)) return false;
  bool blanks = first == m_.blank;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i] == m_.blank) {
      blanks = true;
    } else if (blanks || !is_input(cells[i])) {
      return false;
    }
  }
  return true;
}

bool AccOracle::initial_shaped(const std::vector<int>& cells) const {
  return !cells.empty() && initial_shape_prefix(cells);
}

bool AccOracle::check(const std::vector<std::vector<int>>& blocks) const {
  const std::size_t s = blocks.size();
  if (s < 2 || s % 2 != 0) return false;
  std::vector<TmConfig> c;
  for (std::size_t i = 0; i < s; ++i) {
    auto cfg = config_from_cells(codec_, i % 2 == 1 ? reversed(blocks[i]) : blocks[i]);
    if (!cfg) return false;
    c.push_back(std::move(*cfg));
  }
  if (c.back().state != m_.accept) return false;
  auto first_ok = [&] {
    const auto& b = blocks[0];
    return spec_.per_input ? b == init_cells_ : initial_shaped(b);
  };
  auto step_ok = [&](std::size_t i) {  // 0-based i -> i+1
    if (c[i].tape.size() != c[i + 1].tape.size()) return false;
    auto n = succ(m_, c[i]);
    return n && *n == c[i + 1];
  };
  switch (spec_.variant) {
    case AccVariant::kAcc:
      if (!first_ok()) return false;
      for (std::size_t i = 0; i + 1 < s; ++i)
        if (!step_ok(i)) return false;
      return true;
    case AccVariant::kOddAcc:
      if (!first_ok()) return false;
      for (std::size_t i = 0; i + 1 < s; i += 2)
        if (!step_ok(i)) return false;
      return true;
    case AccVariant::kEvenAcc:
      for (std::size_t i = 1; i + 1 < s; i += 2)
        if (!step_ok(i)) return false;
      return true;
  }
  return false;
}

bool AccOracle::accepts(const Word& w) const {
  for (const auto& s : w)
    if (!ids_.count(s)) throw InputError("'" + s + "' is not in the encoding alphabet");
  auto blocks = split_blocks(ids_, codec_.dollar(), w, true);
  return blocks && check(*blocks);
}

std::optional<std::vector<int>> AccOracle::expected_block(
    const std::vector<std::vector<int>>& done, std::size_t index) const {
  // index is 0-based; returns the unreversed expected content, an empty
  // vector for "no successor exists", nullopt for "unconstrained".
  auto successor = [&]() -> std::optional<std::vector<int>> {
    auto prev = config_from_cells(codec_, index % 2 == 0 ? reversed(done[index - 1]) : done[index - 1]);
    if (!prev) return std::vector<int>{};
    auto n = succ(m_, *prev);
    if (!n) return std::vector<int>{};
    return config_cells(codec_, *n);
  };
  switch (spec_.variant) {
    case AccVariant::kAcc:
      if (index == 0) return spec_.per_input ? std::optional(init_cells_) : std::nullopt;
      return successor();
    case AccVariant::kOddAcc:
      if (index == 0) return spec_.per_input ? std::optional(init_cells_) : std::nullopt;
      if (index % 2 == 1) return successor();
      return std::nullopt;
    case AccVariant::kEvenAcc:
      if (index >= 2 && index % 2 == 0) return successor();
      return std::nullopt;
  }
  return std::nullopt;
}

bool AccOracle::prefix_dead(const Word& prefix) const {
  for (const auto& s : prefix)
    if (!ids_.count(s)) throw InputError("'" + s + "' is not in the encoding alphabet");
  const bool exact = spec_.per_input && spec_.variant == AccVariant::kAcc;
  if (exact && !chain_accepts_) return true;
  if (prefix.empty()) return false;
  if (exact) {
    // Members are the even-length prefixes (in blocks) of the infinite
    // encoding of the width-pinned chain, which repeats once halted.
    while (chain_word_.size() < prefix.size()) {
      auto cells = config_cells(codec_, *chain_last_);
      if (chain_blocks_ % 2 == 1) std::reverse(cells.begin(), cells.end());
      for (int c : cells) chain_word_.push_back(alphabet_[c]);
      chain_word_.push_back("$");
      ++chain_blocks_;
      chain_last_ = succ(m_, *chain_last_);
    }
    return !std::equal(prefix.begin(), prefix.end(), chain_word_.begin());
  }

  auto blocks = split_blocks(ids_, codec_.dollar(), prefix, false);
  if (!blocks) return true;
  std::vector<int> partial = std::move(blocks->back());
  blocks->pop_back();
  const auto& done = *blocks;
  for (std::size_t i = 0; i < done.size(); ++i) {
    if (count_composites(codec_, done[i]) != 1) return true;
    auto expect = expected_block(done, i);
    if (expect) {
      if (expect->empty()) return true;
      if ((i % 2 == 1 ? reversed(*expect) : *expect) != done[i]) return true;
    } else if (i == 0 && !spec_.per_input && spec_.variant != AccVariant::kEvenAcc &&
               !initial_shaped(done[0])) {
      return true;
    }
  }
  if (count_composites(codec_, partial) > 1) return true;
  const std::size_t j = done.size();
  auto expect = expected_block(done, j);
  if (expect) {
    if (expect->empty()) return true;
    const auto written = j % 2 == 1 ? reversed(*expect) : *expect;
    if (partial.size() > written.size()) return true;
    return !std::equal(partial.begin(), partial.end(), written.begin());
  }
  if (j == 0 && !spec_.per_input && spec_.variant != AccVariant::kEvenAcc)
    return !initial_shape_prefix(partial);
  return false;
}

PredicateOracle AccOracle::as_predicate() const {
  auto self = std::make_shared<AccOracle>(*this);
  return {"builtin:" + describe(spec_), alphabet_, [self](const Word& w) { return self->accepts(w); }};
}

bool acc_oracle(const TmMachine& m, AccLanguage language, const Word& x, const Word& w,
                const TmBounds& bounds) {
  AccSpec spec;
  spec.x = x;
  switch (language) {
    case AccLanguage::kAcc: spec.variant = AccVariant::kAcc; break;
    case AccLanguage::kAccAll: spec.variant = AccVariant::kAcc; spec.per_input = false; break;
    case AccLanguage::kOddAcc: spec.variant = AccVariant::kOddAcc; break;
    case AccLanguage::kOddAccAll: spec.variant = AccVariant::kOddAcc; spec.per_input = false; break;
    case AccLanguage::kEvenAcc: spec.variant = AccVariant::kEvenAcc; break;
    case AccLanguage::kEvenAccAll: spec.variant = AccVariant::kEvenAcc; spec.per_input = false; break;
  }
  return AccOracle(m, spec, bounds).accepts(w);
}

}  // namespace succinct
