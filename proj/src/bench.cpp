#include "pmc/bench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <thread>

#include "pmc/blocking.hpp"
#include "pmc/counter.hpp"
#include "pmc/d2c.hpp"
#include "pmc/dimacs.hpp"
#include "pmc/errors.hpp"
#include "pmc/oracle.hpp"

namespace pmc {
namespace {

constexpr std::pair<Method, std::string_view> kMethods[] = {
    {Method::Oracle, "oracle"},     {Method::Dsharp, "dsharp"},
    {Method::Blocking, "blocking"}, {Method::Enum, "enum"},
    {Method::D2c, "d2c"},
};

Deadline make_deadline(double seconds) {
  return seconds > 0 ? Deadline(std::chrono::duration<double>(seconds))
                     : Deadline::never();
}

} // namespace

std::optional<Method> parse_method(std::string_view name) {
  for (auto [m, n] : kMethods)
    if (n == name)
      return m;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  for (auto [k, n] : kMethods)
    if (k == m)
      return n;
  return "?";
}

RunReport run_method(const ProjectedCnf &pf, Method m, const RunOptions &opts) {
  RunReport rep;
  auto start = std::chrono::steady_clock::now();
  CounterOptions co;
  co.caching = opts.caching;
  co.learning = opts.learning;
  co.deadline = make_deadline(opts.time_limit);

  switch (m) {
  case Method::Oracle:
    rep.count = oracle::count_projected_bruteforce(pf);
    break;
  case Method::Dsharp: {
    auto r = count_projected(pf, co);
    rep.count = std::move(r.count);
    rep.decisions = r.stats.decisions;
    break;
  }
  case Method::Blocking:
  case Method::Enum: {
    EnumOptions eo;
    eo.minimize = m == Method::Blocking;
    eo.deadline = co.deadline;
    auto r = enumerate_count(pf, eo);
    rep.count = std::move(r.count);
    rep.decisions = r.stats.decisions;
    rep.r = r.stats.r;
    rep.cubes = r.stats.num_cubes;
    rep.max_live_blocking = r.stats.max_live_blocking;
    break;
  }
  case Method::D2c: {
    auto r = count_via_d2c(pf, co, opts.nnf_in);
    rep.count = std::move(r.count);
    rep.decisions = r.decisions;
    rep.s = r.cnf_bytes;
    break;
  }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  return rep;
}

std::vector<std::string> read_manifest(std::istream &in,
                                       const std::string &base_dir) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#')
      continue;
    auto e = line.find_last_not_of(" \t\r");
    std::filesystem::path p = line.substr(b, e - b + 1);
    if (p.is_relative() && !base_dir.empty())
      p = std::filesystem::path(base_dir) / p;
    out.push_back(p.string());
  }
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<std::string> &instances,
                                const std::vector<Method> &methods,
                                double time_limit, unsigned jobs) {
  // Parse up front so every cell of an instance shares one formula.
  std::vector<std::optional<ProjectedCnf>> parsed(instances.size());
  std::vector<std::string> parse_errors(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::ifstream in(instances[i]);
    if (!in) {
      parse_errors[i] = "cannot open file";
      continue;
    }
    try {
      parsed[i] = parse_dimacs(in);
    } catch (const std::exception &e) {
      parse_errors[i] = e.what();
    }
  }

  std::vector<BenchRow> rows(instances.size() * methods.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell; (cell = next++) < rows.size();) {
      std::size_t i = cell / methods.size();
      BenchRow &row = rows[cell];
      row.instance = instances[i];
      row.method = methods[cell % methods.size()];
      if (!parsed[i]) {
        row.status = "ERROR";
        row.detail = parse_errors[i];
        continue;
      }
      auto start = std::chrono::steady_clock::now();
      try {
        RunOptions ro;
        ro.time_limit = time_limit;
        auto rep = run_method(*parsed[i], row.method, ro);
        row.count = std::move(rep.count);
        row.seconds = rep.seconds;
        row.decisions = rep.decisions;
        row.r = rep.r;
        row.s = rep.s;
        row.status = "OK";
      } catch (const LimitExceeded &e) {
        row.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        row.decisions = e.decisions;
        row.status = std::string_view(e.what()) == "time limit reached"
                         ? "TIMEOUT"
                         : "LIMIT";
        row.detail = e.what();
      } catch (const std::exception &e) {
        row.status = "ERROR";
        row.detail = e.what();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto first = rows.begin() + static_cast<std::ptrdiff_t>(i * methods.size());
    auto last = first + static_cast<std::ptrdiff_t>(methods.size());
    std::optional<BigCount> reference;
    for (auto it = first; it != last; ++it)
      if (it->status == "OK" && it->method == Method::Oracle)
        reference = it->count;
    bool any_disagree = false;
    std::optional<BigCount> seen;
    for (auto it = first; it != last; ++it) {
      if (it->status != "OK")
        continue;
      if (seen && *seen != *it->count)
        any_disagree = true;
      seen = it->count;
    }
    for (auto it = first; it != last; ++it) {
      if (it->status != "OK")
        continue;
      bool bad = reference ? *it->count != *reference : any_disagree;
      if (bad) {
        it->status = "FAIL";
        it->detail = "count disagrees with other methods";
      }
    }
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow> &rows, std::ostream &out) {
  out << "instance,method,count,T,D,R,S,status\n";
  for (const auto &r : rows) {
    out << r.instance << ',' << method_name(r.method) << ','
        << (r.count ? r.count->str() : std::string()) << ',' << std::fixed
        << std::setprecision(6) << r.seconds << ',' << r.decisions << ',';
    if (r.r)
      out << std::setprecision(4) << *r.r;
    out << ',';
    if (r.s)
      out << *r.s;
    out << ',' << r.status << '\n';
  }
}

} // namespace pmc
