#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

// Binary integer model of the seating problem in CPLEX-LP form.
//   x_i_l_k        student i sits in row l, position k
//   w_i_j_l_k_z    conflict pair with i at (l, k) and j at (l + 1, z)
// Both orientations of every conflict pair get w variables and same-row
// distance constraints. Only the real students of an instance take part.

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LpTerm {
  double coef = 0;
  std::string var;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0;
};

struct LpModel {
  std::string title;
  bool maximize = true;
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;
  std::vector<std::string> binaries;

  std::size_t count_prefix(std::string const& prefix) const;
};

class LpParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string x_name(StudentId i, int row, int pos);
std::string w_name(StudentId i, StudentId j, int row, int k, int z);

LpModel build_lp(Problem const& problem);
std::string write_lp(LpModel const& model);
void export_lp(Problem const& problem, std::filesystem::path const& path);
LpModel parse_lp(std::string const& text);

using LpValues = std::map<std::string, double>;

// x from the seating, w as the product of the two x it links.
LpValues lp_values(Problem const& problem, Assignment const& assignment);
double lp_objective(LpModel const& model, LpValues const& values);
// Names of the constraints the values break. Missing variables read as 0.
std::vector<std::string> violated_constraints(LpModel const& model,
                                              LpValues const& values);

// Index-based copy of a model for checking many value sets quickly.
class CompiledLp {
 public:
  explicit CompiledLp(LpModel const& model);

  std::size_t num_variables() const { return names_.size(); }
  std::vector<std::string> violated(LpValues const& values) const;
  std::size_t count_violated(LpValues const& values) const;

 private:
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Sense sense;
    double rhs;
  };
  std::vector<double> dense(LpValues const& values) const;
  bool holds(Row const& row, std::vector<double> const& x) const;

  std::map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  std::vector<std::string> row_names_;
};

}  // namespace seatplan
