#ifndef PATHCODE_SATGEN_H_
#define PATHCODE_SATGEN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathcode/integerize.h"
#include "pathcode/topology.h"

namespace pathcode {

struct Literal {
  std::size_t var;  // 1-based
  bool negated = false;

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

struct CnfInstance {
  std::size_t num_vars = 0;
  std::vector<std::vector<Literal>> clauses;
};

// Variables in range, no empty clause, no variable twice in a clause.
void validate_cnf(const CnfInstance& cnf);

// Additionally: every clause has 2 or 3 literals and both sizes occur, each
// variable is in at most 3 clauses, each literal in at most 2, and no clause
// is repeated.
void validate_23(const CnfInstance& cnf);

// "p cnf N M" header, then 0-terminated clauses; "c" lines are comments.
// Throws ParseError. Only the basic shape is checked.
CnfInstance parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfInstance& cnf);

// assignment[n - 1] is the value of x_n.
bool evaluate(const CnfInstance& cnf, const std::vector<bool>& assignment);

// Exhaustive search in increasing mask order (bit n-1 holds x_n). Returns a
// satisfying assignment or nothing. Throws InputError for N > 24.
std::optional<std::vector<bool>> sat_brute(const CnfInstance& cnf);

struct Gadget {
  ProblemInstance instance;
  // Per arc, the (tail, head) names in the unidentified construction.
  std::vector<std::pair<std::string, std::string>> raw_arcs;
  // E.g. both polarities of one variable leading to the same vertex, which
  // makes the connecting path between two variable subgraphs non-unique.
  std::vector<std::string> warnings;
};

// Encoding instance with one path per clause, using vertex names "n:i",
// "x:n", "nx:n", "d:n", "t1:n", "t2:n", "f1:n", "f2:n" for variable n and
// "n:i", "u:i", "v:i", "y:i", "z:i" for i = N + n. Identified vertices are
// named after their bytewise-smallest member. Throws InputError unless
// validate_23 passes.
Gadget build_gadget(const CnfInstance& cnf);

// 1 on (n, true literal), 2 on (n, false literal) and (n, d), 1 elsewhere.
// Throws InputError if the assignment does not satisfy the formula.
IntLengths witness_lengths(const CnfInstance& cnf, const Gadget& gadget,
                           const std::vector<bool>& assignment);

struct RandomCnfSpec {
  std::size_t num_vars = 6;
  std::uint64_t seed = 1;
};

// Random formula meeting validate_23 over exactly spec.num_vars variables
// (at least 3). Every variable occurs three times and clauses are mostly
// binary, so unsatisfiable draws are common.
CnfInstance random_23_sat(const RandomCnfSpec& spec);

}  // namespace pathcode

#endif  // PATHCODE_SATGEN_H_
