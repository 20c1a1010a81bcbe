#include "pmc/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include "pmc/errors.hpp"

namespace pmc {
namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  return v;
}

struct ProjectionDecl {
  std::size_t line;
  long long var;
};

} // namespace

ProjectedCnf parse_dimacs(std::istream &in, std::vector<std::string> *warnings) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  long long header_vars = 0, header_clauses = 0;
  std::size_t clauses_seen = 0;
  std::size_t open_clause_line = 0;
  std::vector<Lit> current;
  std::vector<Clause> clauses;
  std::vector<ProjectionDecl> projection;
  bool projection_declared = false;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    auto toks = split_ws(line);
    if (toks.empty())
      continue;
    if (toks[0] == "c") {
      std::size_t first = 0;
      if (toks.size() >= 3 && toks[1] == "p" && toks[2] == "show")
        first = 3;
      else if (toks.size() >= 2 && toks[1] == "ind")
        first = 2;
      if (first == 0)
        continue;
      projection_declared = true;
      for (std::size_t i = first; i < toks.size(); ++i) {
        long long v = to_int(toks[i], lineno);
        if (v == 0)
          break;
        if (v < 0)
          throw ParseError(lineno, "negative variable in projection list");
        projection.push_back({lineno, v});
      }
      continue;
    }
    if (toks[0] == "%")
      break; // SATLIB trailer
    if (toks[0] == "p") {
      if (have_header)
        throw ParseError(lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(lineno, "malformed header, expected 'p cnf <vars> "
                                 "<clauses>'");
      header_vars = to_int(toks[2], lineno);
      header_clauses = to_int(toks[3], lineno);
      if (header_vars < 0 || header_clauses < 0 ||
          header_vars > std::numeric_limits<std::int32_t>::max())
        throw ParseError(lineno, "malformed header, negative or huge counts");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(lineno, "clause data before 'p cnf' header");
    for (auto tok : toks) {
      long long x = to_int(tok, lineno);
      if (x == 0) {
        Clause c(std::move(current));
        current.clear();
        ++clauses_seen;
        if (c.is_tautology()) {
          if (warnings)
            warnings->push_back("line " + std::to_string(lineno) +
                                ": dropped tautological clause");
        } else {
          clauses.push_back(std::move(c));
        }
        continue;
      }
      long long v = x < 0 ? -x : x;
      if (v > header_vars)
        throw ParseError(lineno, "variable " + std::to_string(v) +
                                     " out of range (header declares " +
                                     std::to_string(header_vars) + ")");
      if (current.empty())
        open_clause_line = lineno;
      current.push_back(Lit::from_dimacs(static_cast<int>(x)));
    }
  }

  if (!have_header)
    throw ParseError(lineno, "missing 'p cnf' header");
  if (!current.empty())
    throw ParseError(open_clause_line, "clause not terminated by 0");
  if (clauses_seen != static_cast<std::size_t>(header_clauses))
    throw ParseError(lineno, "header declares " +
                                 std::to_string(header_clauses) +
                                 " clauses but " +
                                 std::to_string(clauses_seen) + " were read");

  CnfFormula f;
  f.num_vars = static_cast<Var>(header_vars);
  f.clauses = std::move(clauses);
  if (!projection_declared)
    return ProjectedCnf(std::move(f));
  std::vector<Var> prio;
  for (const auto &d : projection) {
    if (d.var > header_vars)
      throw ParseError(d.line, "projection variable " + std::to_string(d.var) +
                                   " out of range");
    prio.push_back(static_cast<Var>(d.var));
  }
  return ProjectedCnf(std::move(f), std::move(prio));
}

ProjectedCnf parse_dimacs(std::string_view text,
                          std::vector<std::string> *warnings) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, warnings);
}

namespace {

void write_clauses(const CnfFormula &f, std::ostream &out) {
  for (const auto &c : f.clauses) {
    for (Lit l : c)
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

} // namespace

void write_dimacs(const ProjectedCnf &pf, std::ostream &out) {
  const auto &f = pf.formula();
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  if (f.num_vars > 0) {
    out << "c p show";
    for (Var v : pf.priority())
      out << ' ' << v;
    out << " 0\n";
  }
  write_clauses(f, out);
  if (!out)
    throw std::ios_base::failure("failed to write DIMACS output");
}

std::string to_dimacs(const ProjectedCnf &pf) {
  std::ostringstream out;
  write_dimacs(pf, out);
  return out.str();
}

void write_cnf(const CnfFormula &f, std::ostream &out) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  write_clauses(f, out);
  if (!out)
    throw std::ios_base::failure("failed to write DIMACS output");
}

} // namespace pmc
