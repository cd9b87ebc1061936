#include "pathcode/satgen.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pathcode/error.h"
#include "pathcode/rng.h"

namespace pathcode {
namespace {

constexpr std::size_t kMaxBruteVars = 24;

std::string literal_text(const Literal& l) {
  return (l.negated ? "-" : "") + std::to_string(l.var);
}

std::string literal_vertex(const Literal& l) {
  return (l.negated ? "nx:" : "x:") + std::to_string(l.var);
}

std::string slot_vertex(const Literal& l, int slot) {
  return (l.negated ? "f" : "t") + std::to_string(slot) + ":" +
         std::to_string(l.var);
}

std::string hub(std::size_t i) { return "n:" + std::to_string(i); }

// Union-find over raw vertex names; the representative is the smallest name.
class Aliases {
 public:
  void add(const std::string& name) { parent_.emplace(name, name); }
  std::string find(const std::string& name) {
    std::string& p = parent_.at(name);
    if (p != name) p = find(p);
    return p;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a);
    std::string rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }

 private:
  std::map<std::string, std::string> parent_;
};

std::vector<Literal> sorted_clause(const std::vector<Literal>& clause) {
  std::vector<Literal> c = clause;
  std::sort(c.begin(), c.end(),
            [](const Literal& a, const Literal& b) { return a.var < b.var; });
  return c;
}

}  // namespace

void validate_cnf(const CnfInstance& cnf) {
  for (std::size_t m = 0; m < cnf.clauses.size(); ++m) {
    const auto& clause = cnf.clauses[m];
    const std::string where = "clause " + std::to_string(m + 1);
    if (clause.empty()) throw InputError(where + " is empty");
    std::set<std::size_t> vars;
    for (const Literal& l : clause) {
      if (l.var < 1 || l.var > cnf.num_vars) {
        throw InputError(where + ": variable " + std::to_string(l.var) +
                         " out of range");
      }
      if (!vars.insert(l.var).second) {
        throw InputError(where + " mentions variable " +
                         std::to_string(l.var) + " twice");
      }
    }
  }
}

void validate_23(const CnfInstance& cnf) {
  validate_cnf(cnf);
  bool has2 = false;
  bool has3 = false;
  std::map<std::size_t, int> var_count;
  std::map<Literal, int> lit_count;
  std::set<std::vector<Literal>> seen;
  for (std::size_t m = 0; m < cnf.clauses.size(); ++m) {
    const auto& clause = cnf.clauses[m];
    if (clause.size() == 2) {
      has2 = true;
    } else if (clause.size() == 3) {
      has3 = true;
    } else {
      throw InputError("clause " + std::to_string(m + 1) +
                       " must have 2 or 3 literals");
    }
    std::vector<Literal> key = clause;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw InputError("clause " + std::to_string(m + 1) + " is repeated");
    }
    for (const Literal& l : clause) {
      if (++var_count[l.var] > 3) {
        throw InputError("variable " + std::to_string(l.var) +
                         " occurs in more than 3 clauses");
      }
      if (++lit_count[l] > 2) {
        throw InputError("literal " + literal_text(l) +
                         " occurs in more than 2 clauses");
      }
    }
  }
  if (!has2 || !has3) {
    throw InputError("formula needs both 2- and 3-literal clauses");
  }
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  std::optional<std::size_t> declared_clauses;
  std::vector<Literal> current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string format;
      long long n = -1;
      long long m = -1;
      if (declared_clauses || !(tokens >> format >> n >> m) ||
          format != "cnf" || n < 0 || m < 0) {
        throw ParseError(line_no, "expected a single \"p cnf N M\" header");
      }
      cnf.num_vars = static_cast<std::size_t>(n);
      declared_clauses = static_cast<std::size_t>(m);
      continue;
    }
    if (!declared_clauses) throw ParseError(line_no, "clause before header");
    tokens.clear();
    tokens.str(line);
    std::string tok;
    while (tokens >> tok) {
      long long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad literal \"" + tok + "\"");
      }
      if (v == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const std::size_t var = static_cast<std::size_t>(v < 0 ? -v : v);
      if (var > cnf.num_vars) {
        throw ParseError(line_no, "variable " + std::to_string(var) +
                                      " exceeds declared count");
      }
      current.push_back({var, v < 0});
    }
  }
  if (!declared_clauses) throw ParseError(line_no, "missing \"p cnf\" header");
  if (!current.empty()) throw ParseError(line_no, "clause not terminated by 0");
  if (cnf.clauses.size() != *declared_clauses) {
    throw ParseError(line_no, "header declares " +
                                  std::to_string(*declared_clauses) +
                                  " clauses, found " +
                                  std::to_string(cnf.clauses.size()));
  }
  validate_cnf(cnf);
  return cnf;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (const Literal& l : clause) out << literal_text(l) << ' ';
    out << "0\n";
  }
  return out.str();
}

bool evaluate(const CnfInstance& cnf, const std::vector<bool>& assignment) {
  if (assignment.size() != cnf.num_vars) {
    throw InputError("assignment has wrong size");
  }
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (const Literal& l : clause) {
      if (assignment[l.var - 1] != l.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::optional<std::vector<bool>> sat_brute(const CnfInstance& cnf) {
  validate_cnf(cnf);
  if (cnf.num_vars > kMaxBruteVars) {
    throw InputError("exhaustive SAT check limited to 24 variables");
  }
  std::vector<bool> assignment(cnf.num_vars);
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t n = 0; n < cnf.num_vars; ++n) {
      assignment[n] = (mask >> n) & 1;
    }
    if (evaluate(cnf, assignment)) return assignment;
  }
  return std::nullopt;
}

Gadget build_gadget(const CnfInstance& cnf) {
  validate_23(cnf);
  const std::size_t n_vars = cnf.num_vars;

  std::vector<std::string> raw_vertices;
  std::vector<std::pair<std::string, std::string>> raw_arcs;
  for (std::size_t n = 1; n <= n_vars; ++n) {
    const std::string s = std::to_string(n);
    for (const char* prefix : {"n:", "x:", "nx:", "d:", "t1:", "t2:", "f1:",
                               "f2:"}) {
      raw_vertices.push_back(prefix + s);
    }
    raw_arcs.insert(raw_arcs.end(), {{"n:" + s, "x:" + s},
                                     {"n:" + s, "nx:" + s},
                                     {"n:" + s, "d:" + s},
                                     {"x:" + s, "t1:" + s},
                                     {"x:" + s, "t2:" + s},
                                     {"nx:" + s, "f1:" + s},
                                     {"nx:" + s, "f2:" + s}});
  }
  for (std::size_t n = 1; n <= n_vars; ++n) {
    const std::string s = std::to_string(n_vars + n);
    for (const char* prefix : {"n:", "u:", "v:", "y:", "z:"}) {
      raw_vertices.push_back(prefix + s);
    }
    raw_arcs.insert(raw_arcs.end(), {{"n:" + s, "u:" + s},
                                     {"n:" + s, "v:" + s},
                                     {"u:" + s, "y:" + s},
                                     {"u:" + s, "z:" + s}});
  }

  // Successor indices per literal, in clause order, without repeats.
  std::map<Literal, std::vector<std::size_t>> successors;
  auto add_successor = [&](const Literal& l, std::size_t i) {
    auto& list = successors[l];
    if (std::find(list.begin(), list.end(), i) == list.end()) list.push_back(i);
  };
  std::vector<std::vector<Literal>> sorted;
  for (const auto& clause : cnf.clauses) {
    sorted.push_back(sorted_clause(clause));
    const auto& c = sorted.back();
    if (c.size() == 3) {
      add_successor(c[0], c[1].var);
      add_successor(c[1], c[2].var);
    } else {
      add_successor(c[0], c[1].var);
      add_successor(c[1], n_vars + c[1].var);
    }
  }

  Aliases aliases;
  for (const auto& v : raw_vertices) aliases.add(v);
  for (const auto& [lit, list] : successors) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      aliases.unite(slot_vertex(lit, static_cast<int>(k + 1)), hub(list[k]));
    }
  }

  Graph g;
  for (const auto& v : raw_vertices) {
    const std::string rep = aliases.find(v);
    if (!g.find_vertex(rep)) g.add_vertex(rep);
  }
  std::vector<std::pair<std::string, std::string>> arc_origin;
  for (const auto& [tail, head] : raw_arcs) {
    g.add_arc(*g.find_vertex(aliases.find(tail)),
              *g.find_vertex(aliases.find(head)));
    arc_origin.emplace_back(tail, head);
  }

  std::vector<std::string> warnings;
  for (std::size_t n = 1; n <= n_vars; ++n) {
    const auto& pos = successors[Literal{n, false}];
    const auto& neg = successors[Literal{n, true}];
    for (std::size_t i : pos) {
      if (std::find(neg.begin(), neg.end(), i) != neg.end()) {
        warnings.push_back("x" + std::to_string(n) + " and -x" +
                           std::to_string(n) + " both lead to " + hub(i) +
                           "; connecting path not unique");
      }
    }
  }

  auto name = [&](const std::string& raw) { return aliases.find(raw); };
  std::vector<Path> paths;
  for (const auto& c : sorted) {
    std::vector<std::string> seq;
    if (c.size() == 3) {
      seq = {name(hub(c[0].var)), name(literal_vertex(c[0])),
             name(hub(c[1].var)), name(literal_vertex(c[1])),
             name(hub(c[2].var)), name(literal_vertex(c[2]))};
    } else {
      const std::string top = std::to_string(n_vars + c[1].var);
      seq = {name(hub(c[0].var)),      name(literal_vertex(c[0])),
             name(hub(c[1].var)),      name(literal_vertex(c[1])),
             name("n:" + top),         name("u:" + top),
             name("y:" + top)};
    }
    paths.push_back(path_from_ids(g, seq));
  }
  return Gadget{ProblemInstance(std::move(g), std::move(paths)),
                std::move(arc_origin), std::move(warnings)};
}

IntLengths witness_lengths(const CnfInstance& cnf, const Gadget& gadget,
                           const std::vector<bool>& assignment) {
  if (!evaluate(cnf, assignment)) {
    throw InputError("assignment does not satisfy the formula");
  }
  const ProblemInstance& inst = gadget.instance;
  IntLengths out;
  out.lengths.assign(inst.graph().num_arcs(), 1);
  for (ArcIndex a = 0; a < gadget.raw_arcs.size(); ++a) {
    const auto& [tail, head] = gadget.raw_arcs[a];
    if (tail.rfind("n:", 0) != 0) continue;
    const std::size_t n = std::stoul(tail.substr(2));
    if (n > cnf.num_vars) continue;
    const bool value = assignment[n - 1];
    if (head.rfind("x:", 0) == 0) {
      out.lengths[a] = value ? 1 : 2;
    } else if (head.rfind("nx:", 0) == 0) {
      out.lengths[a] = value ? 2 : 1;
    } else if (head.rfind("d:", 0) == 0) {
      out.lengths[a] = 2;
    }
  }
  out.objective = objective_int(inst, out);
  return out;
}

CnfInstance random_23_sat(const RandomCnfSpec& spec) {
  if (spec.num_vars < 3) throw InputError("random formula needs >= 3 variables");
  Rng rng(spec.seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Literal> tokens;
    for (std::size_t n = 1; n <= spec.num_vars; ++n) {
      // Three occurrences per variable, split 2/1 between the polarities.
      const bool more_negative = rng.below(2) == 1;
      tokens.push_back({n, false});
      tokens.push_back({n, true});
      tokens.push_back({n, more_negative});
    }
    rng.shuffle(tokens);

    // One or two ternary clauses (fixed by parity), sometimes two more.
    std::size_t ternary = tokens.size() % 2 == 1 ? 1 : 2;
    if (tokens.size() >= ternary * 3 + 8 && rng.below(2) == 0) ternary += 2;
    CnfInstance cnf;
    cnf.num_vars = spec.num_vars;
    std::size_t i = 0;
    for (std::size_t c = 0; i < tokens.size(); ++c) {
      const std::size_t size = c < ternary ? 3 : 2;
      std::vector<Literal> clause(tokens.begin() + static_cast<long>(i),
                                  tokens.begin() + static_cast<long>(i + size));
      i += size;
      cnf.clauses.push_back(std::move(clause));
    }
    try {
      validate_23(cnf);
    } catch (const InputError&) {
      continue;
    }
    return cnf;
  }
  throw InvariantError("could not draw a random (2,3) formula");
}

}  // namespace pathcode
