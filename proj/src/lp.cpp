#include "seatplan/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string_view>

#include "seatplan/io.hpp"

namespace seatplan {

std::size_t LpModel::count_prefix(std::string const& prefix) const {
  return std::count_if(binaries.begin(), binaries.end(), [&](auto const& v) {
    return v.compare(0, prefix.size(), prefix) == 0;
  });
}

std::string x_name(StudentId i, int row, int pos) {
  return "x_" + std::to_string(i + 1) + "_" + std::to_string(row) + "_" +
         std::to_string(pos);
}

std::string w_name(StudentId i, StudentId j, int row, int k, int z) {
  return "w_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
         std::to_string(row) + "_" + std::to_string(k) + "_" +
         std::to_string(z);
}

LpModel build_lp(Problem const& problem) {
  LpModel model;
  model.title = problem.instance().name;
  auto const students = problem.num_real_students();
  auto const rows = problem.num_rows();
  auto const d = problem.d_min();
  auto const d_same = problem.d_min_same_row();

  for (StudentId i = 0; i < students; ++i) {
    for (int l = 1; l <= rows; ++l) {
      for (int k = 1; k <= problem.row_size(l); ++k) {
        model.binaries.push_back(x_name(i, l, k));
      }
    }
  }

  for (StudentId i = 0; i < students; ++i) {
    LpConstraint c{"assign_" + std::to_string(i + 1), {}, Sense::kEqual, 1};
    for (int l = 1; l <= rows; ++l) {
      for (int k = 1; k <= problem.row_size(l); ++k) {
        c.terms.push_back({1, x_name(i, l, k)});
      }
    }
    model.constraints.push_back(std::move(c));
  }

  for (int l = 1; l <= rows; ++l) {
    for (int k = 1; k <= problem.row_size(l); ++k) {
      LpConstraint c{"seat_" + std::to_string(l) + "_" + std::to_string(k),
                     {}, Sense::kLessEqual, 1};
      for (StudentId i = 0; i < students; ++i) {
        c.terms.push_back({1, x_name(i, l, k)});
      }
      model.constraints.push_back(std::move(c));
    }
  }

  for (auto const& e : problem.edges()) {
    for (auto const& [a, b] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
      auto const tag = std::to_string(a + 1) + "_" + std::to_string(b + 1);
      // Same row: z - k >= (x_a + x_b - 1) d'.
      for (int l = 1; l <= rows; ++l) {
        for (int k = 1; k <= problem.row_size(l); ++k) {
          for (int z = k + 1; z <= problem.row_size(l); ++z) {
            auto const suffix = tag + "_" + std::to_string(l) + "_" +
                                std::to_string(k) + "_" + std::to_string(z);
            model.constraints.push_back(
                {"row_" + suffix,
                 {{double(d_same), x_name(a, l, k)},
                  {double(d_same), x_name(b, l, z)}},
                 Sense::kLessEqual,
                 double(z - k + d_same)});
          }
        }
      }
      for (int l = 1; l < rows; ++l) {
        auto const reach =
            std::max(problem.row_size(l), problem.row_size(l + 1)) - 1;
        for (int k = 1; k <= problem.row_size(l); ++k) {
          for (int z = 1; z <= problem.row_size(l + 1); ++z) {
            auto const w = w_name(a, b, l, k, z);
            auto const xa = x_name(a, l, k);
            auto const xb = x_name(b, l + 1, z);
            auto const suffix = tag + "_" + std::to_string(l) + "_" +
                                std::to_string(k) + "_" + std::to_string(z);
            auto const dist = std::abs(z - k);
            model.binaries.push_back(w);
            model.objective.push_back({double(dist - problem.psi()), w});
            model.constraints.push_back({"link_" + suffix,
                                         {{1, w}, {-1, xa}, {-1, xb}},
                                         Sense::kGreaterEqual,
                                         -1});
            model.constraints.push_back(
                {"linka_" + suffix, {{1, w}, {-1, xa}}, Sense::kLessEqual, 0});
            model.constraints.push_back(
                {"linkb_" + suffix, {{1, w}, {-1, xb}}, Sense::kLessEqual, 0});
            model.constraints.push_back({"dmin_" + suffix,
                                         {{double(dist - d), w}},
                                         Sense::kGreaterEqual,
                                         0});
            model.constraints.push_back({"dmax_" + suffix,
                                         {{double(dist), w}},
                                         Sense::kLessEqual,
                                         double(reach)});
          }
        }
      }
    }
  }

  auto const add_requirement = [&](StudentId i, bool front) {
    LpConstraint c{(front ? "front_" : "back_") + std::to_string(i + 1),
                   {},
                   Sense::kEqual,
                   1};
    for (int l = 1; l <= rows; ++l) {
      auto const n = problem.row_size(l);
      auto const first = front ? 1 : std::max(1, n - 1);
      auto const last = front ? std::min(2, n) : n;
      for (int k = first; k <= last; ++k) {
        c.terms.push_back({1, x_name(i, l, k)});
      }
    }
    model.constraints.push_back(std::move(c));
  };
  for (auto const i : problem.instance().front) {
    add_requirement(i, true);
  }
  for (auto const i : problem.instance().back) {
    add_requirement(i, false);
  }
  return model;
}

namespace {

std::string number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

// `tail` (sense and right-hand side) wraps like any other piece.
void write_terms(std::ostringstream& out, std::vector<LpTerm> const& terms,
                 std::size_t indent, std::string const& tail = "") {
  std::size_t column = indent;
  bool first = true;
  for (auto const& t : terms) {
    std::string piece;
    if (first) {
      piece = t.coef < 0 ? "- " : "";
    } else {
      piece = t.coef < 0 ? " - " : " + ";
    }
    auto const magnitude = std::abs(t.coef);
    if (magnitude != 1) {
      piece += number(magnitude) + " ";
    }
    piece += t.var;
    if (column + piece.size() > 78 && !first) {
      out << "\n" << std::string(indent, ' ');
      column = indent;
    }
    out << piece;
    column += piece.size();
    first = false;
  }
  if (terms.empty()) {
    out << "0";
    ++column;
  }
  if (!tail.empty()) {
    if (column + tail.size() > 78) {
      out << "\n" << std::string(indent, ' ');
    }
    out << tail;
  }
}

char const* sense_text(Sense s) {
  switch (s) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "=";
}

}  // namespace

constexpr std::string_view kTitlePrefix = "\\ seating model: ";

std::string write_lp(LpModel const& model) {
  std::ostringstream out;
  out << "\\ seating model";
  if (!model.title.empty()) {
    out << ": " << model.title;
  }
  out << "\n" << (model.maximize ? "Maximize" : "Minimize") << "\n obj: ";
  write_terms(out, model.objective, 6);
  out << "\nSubject To\n";
  for (auto const& c : model.constraints) {
    out << " " << c.name << ": ";
    write_terms(out, c.terms, c.name.size() + 3,
                std::string(" ") + sense_text(c.sense) + " " + number(c.rhs));
    out << "\n";
  }
  out << "Binary\n";
  for (auto const& v : model.binaries) {
    out << " " << v << "\n";
  }
  out << "End\n";
  return out.str();
}

void export_lp(Problem const& problem, std::filesystem::path const& path) {
  write_file(path, write_lp(build_lp(problem)));
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_number(std::string const& token, double& out) {
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end != token.c_str() && *end == '\0';
}

bool is_sense(std::string const& t) {
  return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" ||
         t == "=<" || t == "=>";
}

Sense to_sense(std::string const& t) {
  if (t == "<=" || t == "<" || t == "=<") {
    return Sense::kLessEqual;
  }
  if (t == ">=" || t == ">" || t == "=>") {
    return Sense::kGreaterEqual;
  }
  return Sense::kEqual;
}

// Reads "[name:] [+|-] [coef] var ..." tokens into terms; stops at a sense.
class ExpressionReader {
 public:
  void feed(std::string const& token, std::vector<LpTerm>& terms) {
    if (token == "+" || token == "-") {
      sign_ = token == "-" ? -sign_ : sign_;
      return;
    }
    double value = 0;
    if (parse_number(token, value)) {
      coef_ = value;
      have_coef_ = true;
      return;
    }
    terms.push_back({sign_ * (have_coef_ ? coef_ : 1.0), token});
    reset();
  }
  void reset() {
    sign_ = 1;
    coef_ = 1;
    have_coef_ = false;
  }

 private:
  double sign_ = 1;
  double coef_ = 1;
  bool have_coef_ = false;
};

std::vector<std::string> tokenize(std::string const& line) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(current);
      current.clear();
    }
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    auto const c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == ':') {
      current += c;
      flush();
    } else if (c == '<' || c == '>' || c == '=') {
      flush();
      current += c;
      if (i + 1 < line.size() &&
          (line[i + 1] == '=' || line[i + 1] == '<' || line[i + 1] == '>')) {
        current += line[++i];
      }
      flush();
    } else if ((c == '+' || c == '-') &&
               !(current.size() > 0 &&
                 (current.back() == 'e' || current.back() == 'E') &&
                 std::isdigit(static_cast<unsigned char>(current.front())))) {
      flush();
      out.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

}  // namespace

LpModel parse_lp(std::string const& text) {
  enum class Section { kNone, kObjective, kConstraints, kBinary, kOther, kEnd };
  LpModel model;
  Section section = Section::kNone;
  ExpressionReader reader;
  LpConstraint current;
  bool in_constraint = false;
  bool awaiting_rhs = false;
  double rhs_sign = 1;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind(kTitlePrefix, 0) == 0) {
      model.title = line.substr(kTitlePrefix.size());
    }
    if (auto const cut = line.find('\\'); cut != std::string::npos) {
      line.erase(cut);
    }
    auto const key = lower(line);
    auto const trimmed_start = key.find_first_not_of(" \t");
    if (trimmed_start == std::string::npos) {
      continue;
    }
    auto const head = key.substr(trimmed_start);
    if (head == "maximize" || head == "maximum" || head == "max") {
      section = Section::kObjective;
      model.maximize = true;
      continue;
    }
    if (head == "minimize" || head == "minimum" || head == "min") {
      section = Section::kObjective;
      model.maximize = false;
      continue;
    }
    if (head == "subject to" || head == "such that" || head == "st" ||
        head == "s.t.") {
      section = Section::kConstraints;
      reader.reset();
      continue;
    }
    if (head == "binary" || head == "binaries" || head == "bin") {
      section = Section::kBinary;
      continue;
    }
    if (head == "bounds" || head == "general" || head == "generals") {
      section = Section::kOther;
      continue;
    }
    if (head == "end") {
      section = Section::kEnd;
      continue;
    }

    auto const tokens = tokenize(line);
    switch (section) {
      case Section::kObjective:
        for (auto const& t : tokens) {
          if (t.back() == ':') {
            continue;
          }
          reader.feed(t, model.objective);
        }
        break;
      case Section::kConstraints:
        for (auto const& t : tokens) {
          if (awaiting_rhs) {
            double value = 0;
            if (t == "-" || t == "+") {
              rhs_sign = t == "-" ? -rhs_sign : rhs_sign;
              continue;
            }
            if (!parse_number(t, value)) {
              throw LpParseError("line " + std::to_string(line_no) +
                                 ": expected right-hand side, got '" + t +
                                 "'");
            }
            current.rhs = rhs_sign * value;
            model.constraints.push_back(std::move(current));
            current = {};
            in_constraint = false;
            awaiting_rhs = false;
            reader.reset();
            continue;
          }
          if (t.back() == ':' && !in_constraint) {
            current.name = t.substr(0, t.size() - 1);
            in_constraint = true;
            continue;
          }
          if (is_sense(t)) {
            current.sense = to_sense(t);
            rhs_sign = 1;
            awaiting_rhs = true;
            in_constraint = true;
            continue;
          }
          in_constraint = true;
          reader.feed(t, current.terms);
        }
        break;
      case Section::kBinary:
        for (auto const& t : tokens) {
          model.binaries.push_back(t);
        }
        break;
      case Section::kNone:
        throw LpParseError("line " + std::to_string(line_no) +
                           ": content before the objective section");
      case Section::kOther:
      case Section::kEnd:
        break;
    }
  }
  if (in_constraint || awaiting_rhs) {
    throw LpParseError("unterminated constraint '" + current.name + "'");
  }
  return model;
}

LpValues lp_values(Problem const& problem, Assignment const& assignment) {
  LpValues values;
  auto const students = problem.num_real_students();
  auto const at = [&](StudentId i) { return assignment.seat_of[i]; };
  for (StudentId i = 0; i < students; ++i) {
    if (auto const seat = at(i)) {
      values[x_name(i, seat->row, seat->pos)] = 1;
    }
  }
  for (auto const& e : problem.edges()) {
    for (auto const& [a, b] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
      auto const sa = at(a);
      auto const sb = at(b);
      if (sa && sb && sb->row == sa->row + 1) {
        values[w_name(a, b, sa->row, sa->pos, sb->pos)] = 1;
      }
    }
  }
  return values;
}

namespace {

double value_of(LpValues const& values, std::string const& var) {
  auto const it = values.find(var);
  return it == values.end() ? 0.0 : it->second;
}

}  // namespace

double lp_objective(LpModel const& model, LpValues const& values) {
  double total = 0;
  for (auto const& t : model.objective) {
    total += t.coef * value_of(values, t.var);
  }
  return total;
}

std::vector<std::string> violated_constraints(LpModel const& model,
                                              LpValues const& values) {
  constexpr double kTol = 1e-9;
  std::vector<std::string> out;
  for (auto const& c : model.constraints) {
    double lhs = 0;
    for (auto const& t : c.terms) {
      lhs += t.coef * value_of(values, t.var);
    }
    bool ok = true;
    switch (c.sense) {
      case Sense::kLessEqual:
        ok = lhs <= c.rhs + kTol;
        break;
      case Sense::kGreaterEqual:
        ok = lhs >= c.rhs - kTol;
        break;
      case Sense::kEqual:
        ok = std::abs(lhs - c.rhs) <= kTol;
        break;
    }
    if (!ok) {
      out.push_back(c.name);
    }
  }
  return out;
}

CompiledLp::CompiledLp(LpModel const& model) {
  auto const id = [&](std::string const& var) {
    auto const [it, added] =
        index_.emplace(var, static_cast<int>(names_.size()));
    if (added) {
      names_.push_back(var);
    }
    return it->second;
  };
  for (auto const& v : model.binaries) {
    id(v);
  }
  for (auto const& c : model.constraints) {
    Row row{{}, c.sense, c.rhs};
    for (auto const& t : c.terms) {
      row.terms.emplace_back(id(t.var), t.coef);
    }
    rows_.push_back(std::move(row));
    row_names_.push_back(c.name);
  }
}

std::vector<double> CompiledLp::dense(LpValues const& values) const {
  std::vector<double> x(names_.size(), 0.0);
  for (auto const& [name, value] : values) {
    if (auto const it = index_.find(name); it != index_.end()) {
      x[it->second] = value;
    }
  }
  return x;
}

bool CompiledLp::holds(Row const& row, std::vector<double> const& x) const {
  constexpr double kTol = 1e-9;
  double lhs = 0;
  for (auto const& [var, coef] : row.terms) {
    lhs += coef * x[var];
  }
  switch (row.sense) {
    case Sense::kLessEqual:
      return lhs <= row.rhs + kTol;
    case Sense::kGreaterEqual:
      return lhs >= row.rhs - kTol;
    case Sense::kEqual:
      return std::abs(lhs - row.rhs) <= kTol;
  }
  return false;
}

std::vector<std::string> CompiledLp::violated(LpValues const& values) const {
  auto const x = dense(values);
  std::vector<std::string> out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!holds(rows_[r], x)) {
      out.push_back(row_names_[r]);
    }
  }
  return out;
}

std::size_t CompiledLp::count_violated(LpValues const& values) const {
  auto const x = dense(values);
  return std::count_if(rows_.begin(), rows_.end(),
                       [&](Row const& row) { return !holds(row, x); });
}

}  // namespace seatplan
