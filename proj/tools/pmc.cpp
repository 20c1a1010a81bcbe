#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pmc/bench.hpp"
#include "pmc/counter.hpp"
#include "pmc/d2c.hpp"
#include "pmc/dimacs.hpp"
#include "pmc/errors.hpp"
#include "pmc/gen.hpp"
#include "pmc/nnf.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kLimit = 3, kInternal = 4 };

// "1 2 3", "1,2,3" and a trailing 0 are all accepted.
std::vector<pmc::Var> parse_var_list(const std::string &text) {
  std::string s = text;
  for (char &ch : s)
    if (ch == ',')
      ch = ' ';
  std::istringstream in(s);
  std::vector<pmc::Var> vars;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size() || v < 0)
      throw std::invalid_argument("bad variable '" + tok + "' in --proj");
    if (v == 0)
      break;
    vars.push_back(static_cast<pmc::Var>(v));
  }
  return vars;
}

pmc::ProjectedCnf load_cnf(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::vector<std::string> warnings;
  auto pf = pmc::parse_dimacs(in, &warnings);
  for (const auto &w : warnings)
    std::cerr << "c warning: " << path << ": " << w << '\n';
  return pf;
}

pmc::NnfGraph load_nnf(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  return pmc::parse_nnf(in);
}

// Writes to `path`, or stdout when it is empty or "-".
template <class F> void emit(const std::string &path, F &&write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  write(out);
}

int guarded(const std::function<int()> &body) {
  try {
    return body();
  } catch (const pmc::ParseError &e) {
    std::cerr << "c error: parse: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument &e) {
    std::cerr << "c error: input: " << e.what() << '\n';
    return kParse;
  } catch (const pmc::LimitExceeded &e) {
    std::cout << "s UNKNOWN\n";
    std::cout << "c stat D=" << e.decisions << '\n';
    std::cerr << "c error: limit: " << e.what() << '\n';
    return kLimit;
  } catch (const pmc::InternalError &e) {
    std::cerr << "c error: internal: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception &e) {
    std::cerr << "c error: " << e.what() << '\n';
    return kInternal;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Projected model counting toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  // count
  auto *count = app.add_subcommand("count", "Projected model count of a CNF");
  std::string count_file, count_method = "dsharp", count_proj, count_nnf;
  double count_limit = 0;
  bool no_cache = false, learning = false;
  count->add_option("file", count_file, "DIMACS CNF")->required();
  count->add_option("--method,-m", count_method, "oracle|dsharp|blocking|enum|d2c")
      ->check(CLI::IsMember({"oracle", "dsharp", "blocking", "enum", "d2c"}));
  count->add_option("--proj", count_proj, "Priority variables, overriding the file");
  count->add_option("--time-limit", count_limit, "Seconds, 0 for none");
  count->add_flag("--no-cache", no_cache, "Disable component caching");
  count->add_flag("--learning", learning, "CDCL for non-priority checks");
  count->add_option("--nnf-in", count_nnf, "d-DNNF to use instead of compiling (d2c)");
  count->callback([&] {
    action = [&] {
      auto pf = load_cnf(count_file);
      if (count->count("--proj"))
        pf = pmc::ProjectedCnf(pf.formula(), parse_var_list(count_proj));
      pmc::RunOptions ro;
      ro.time_limit = count_limit;
      ro.caching = !no_cache;
      ro.learning = learning;
      std::optional<pmc::NnfGraph> external;
      if (!count_nnf.empty()) {
        external = load_nnf(count_nnf);
        ro.nnf_in = &*external;
      }
      auto method = *pmc::parse_method(count_method);
      auto rep = pmc::run_method(pf, method, ro);
      std::cout << "c method=" << count_method << " vars=" << pf.num_vars()
                << " clauses=" << pf.formula().clauses.size()
                << " priority=" << pf.priority().size() << '\n';
      std::cout << "s " << rep.count << '\n';
      std::cout << std::fixed << std::setprecision(6) << "c stat T="
                << rep.seconds << '\n';
      std::cout << "c stat D=" << rep.decisions << '\n';
      if (rep.r)
        std::cout << std::setprecision(4) << "c stat R=" << *rep.r << '\n';
      if (rep.cubes)
        std::cout << "c stat cubes=" << *rep.cubes << '\n';
      if (rep.max_live_blocking)
        std::cout << "c stat max_live_blocking=" << *rep.max_live_blocking
                  << '\n';
      if (rep.s)
        std::cout << "c stat S=" << *rep.s << '\n';
      return kOk;
    };
  });

  // compile
  auto *compile = app.add_subcommand("compile", "Compile a CNF to d-DNNF (c2d format)");
  std::string compile_file, compile_out;
  compile->add_option("file", compile_file, "DIMACS CNF")->required();
  compile->add_option("-o,--output", compile_out, "Output .nnf (default stdout)");
  compile->callback([&] {
    action = [&] {
      auto pf = load_cnf(compile_file);
      auto g = pmc::compile_ddnnf(pf.formula());
      emit(compile_out, [&](std::ostream &o) { pmc::write_nnf(g, o); });
      return kOk;
    };
  });

  // d2c
  auto *d2c = app.add_subcommand("d2c", "Encode a projected d-DNNF as CNF");
  std::string d2c_cnf, d2c_nnf, d2c_proj, d2c_out;
  bool no_hash = false;
  auto *cnf_opt = d2c->add_option("--cnf-in", d2c_cnf, "Compile this CNF first");
  auto *nnf_opt = d2c->add_option("--nnf-in", d2c_nnf, "Existing d-DNNF");
  cnf_opt->excludes(nnf_opt);
  d2c->add_option("--proj", d2c_proj, "Priority variables");
  d2c->add_flag("--no-hash", no_hash, "Disable hash-consing of expressions");
  d2c->add_option("-o,--output", d2c_out, "Output DIMACS (default stdout)");
  d2c->callback([&] {
    action = [&] {
      if (d2c_cnf.empty() == d2c_nnf.empty())
        throw std::invalid_argument("give exactly one of --cnf-in, --nnf-in");
      pmc::NnfGraph g;
      std::vector<pmc::Var> prio;
      if (!d2c_cnf.empty()) {
        auto pf = load_cnf(d2c_cnf);
        g = pmc::compile_ddnnf(pf.formula());
        prio.assign(pf.priority().begin(), pf.priority().end());
      } else {
        g = load_nnf(d2c_nnf);
        for (pmc::Var v = 1; v <= g.num_vars(); ++v)
          prio.push_back(v);
      }
      if (d2c->count("--proj"))
        prio = parse_var_list(d2c_proj);
      pmc::D2cOptions opts;
      opts.hash_consing = !no_hash;
      auto r = pmc::d2c(g, prio, opts);
      emit(d2c_out, [&](std::ostream &o) { pmc::write_d2c_dimacs(r, o); });
      return kOk;
    };
  });

  // gen
  auto *gen = app.add_subcommand("gen", "Generate benchmark instances");
  gen->require_subcommand(1);
  pmc::GenSpec spec;
  std::string gen_out;
  auto *uf = gen->add_subcommand("uf3sat", "Uniform random 3-SAT");
  uf->add_option("--vars", spec.n)->required();
  uf->add_option("--clauses", spec.m)->required();
  uf->add_option("--proj-count", spec.k)->required();
  uf->add_option("--seed", spec.seed)->required();
  uf->add_option("-o,--output", gen_out);
  auto *circ = gen->add_subcommand("circuit", "Random Boolean circuit");
  circ->add_option("--inputs", spec.n)->required();
  circ->add_option("--rounds", spec.m)->required();
  circ->add_option("--proj-count", spec.k)->required();
  circ->add_option("--seed", spec.seed)->required();
  circ->add_option("-o,--output", gen_out);
  auto gen_action = [&](pmc::GenFamily fam) {
    spec.family = fam;
    action = [&] {
      emit(gen_out, [&](std::ostream &o) { pmc::write_generated(spec, o); });
      return kOk;
    };
  };
  uf->callback([&] { gen_action(pmc::GenFamily::Uf3Sat); });
  circ->callback([&] { gen_action(pmc::GenFamily::Circuit); });

  // bench
  auto *bench = app.add_subcommand("bench", "Run methods over a manifest, CSV out");
  std::string manifest, bench_out;
  std::vector<std::string> methods{"oracle", "dsharp", "blocking", "enum", "d2c"};
  double bench_limit = 60;
  unsigned jobs = 1;
  bench->add_option("manifest", manifest, "File listing one instance per line")
      ->required();
  bench->add_option("--methods", methods, "Methods to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"oracle", "dsharp", "blocking", "enum", "d2c"}));
  bench->add_option("--time-limit", bench_limit, "Seconds per cell");
  bench->add_option("--jobs,-j", jobs, "Worker threads");
  bench->add_option("-o,--output", bench_out, "CSV output (default stdout)");
  bench->callback([&] {
    action = [&] {
      std::ifstream in(manifest);
      if (!in)
        throw std::invalid_argument("cannot open " + manifest);
      auto files = pmc::read_manifest(
          in, std::filesystem::path(manifest).parent_path().string());
      std::vector<pmc::Method> ms;
      for (const auto &m : methods)
        ms.push_back(*pmc::parse_method(m));
      auto rows = pmc::run_bench(files, ms, bench_limit, jobs);
      emit(bench_out, [&](std::ostream &o) { pmc::write_bench_csv(rows, o); });
      for (const auto &r : rows)
        if (r.status == "FAIL")
          return kInternal;
      return kOk;
    };
  });

  CLI11_PARSE(app, argc, argv);
  return guarded(action);
}
