#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pmc/bench.hpp"
#include "pmc/blocking.hpp"
#include "pmc/counter.hpp"
#include "pmc/d2c.hpp"
#include "pmc/dimacs.hpp"
#include "pmc/errors.hpp"
#include "pmc/gen.hpp"
#include "pmc/nnf.hpp"

namespace py = pybind11;

namespace {

py::object to_py(const pmc::BigCount &c) {
  return py::module_::import("builtins").attr("int")(c.str());
}

pmc::ProjectedCnf load(const std::string &text,
                       const std::optional<std::vector<pmc::Var>> &proj) {
  auto pf = pmc::parse_dimacs(text);
  if (proj)
    pf = pmc::ProjectedCnf(pf.formula(), *proj);
  return pf;
}

} // namespace

PYBIND11_MODULE(_pmc, m) {
  m.doc() = "Projected model counting";

  static py::exception<pmc::LimitExceeded> limit_exc(m, "LimitExceeded",
                                                     PyExc_TimeoutError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const pmc::ParseError &e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const pmc::LimitExceeded &e) {
      py::set_error(limit_exc, e.what());
    } catch (const pmc::InternalError &e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def(
      "count",
      [](const std::string &dimacs, const std::string &method,
         std::optional<std::vector<pmc::Var>> proj, double time_limit) {
        auto pf = load(dimacs, proj);
        auto which = pmc::parse_method(method);
        if (!which)
          throw py::value_error("unknown method " + method);
        pmc::RunOptions ro;
        ro.time_limit = time_limit;
        pmc::RunReport rep;
        {
          py::gil_scoped_release release;
          rep = pmc::run_method(pf, *which, ro);
        }
        return to_py(rep.count);
      },
      py::arg("dimacs"), py::arg("method") = "dsharp",
      py::arg("proj") = py::none(), py::arg("time_limit") = 0.0,
      "Projected model count of a DIMACS text with one of oracle, dsharp, "
      "blocking, enum, d2c.");

  m.def(
      "enumerate",
      [](const std::string &dimacs, bool minimize,
         std::optional<std::vector<pmc::Var>> proj) {
        auto pf = load(dimacs, proj);
        pmc::EnumOptions eo;
        eo.minimize = minimize;
        eo.record_cubes = true;
        auto r = pmc::enumerate_count(pf, eo);
        py::list cubes;
        for (const auto &c : r.cubes) {
          py::list lits;
          for (pmc::Lit l : c.cube)
            lits.append(l.to_dimacs());
          cubes.append(lits);
        }
        py::dict d;
        d["count"] = to_py(r.count);
        d["cubes"] = cubes;
        d["R"] = r.stats.r;
        d["decisions"] = r.stats.decisions;
        d["max_live_blocking"] = r.stats.max_live_blocking;
        return d;
      },
      py::arg("dimacs"), py::arg("minimize") = true, py::arg("proj") = py::none(),
      "Blocking-clause enumeration; returns count, cubes and statistics.");

  m.def(
      "compile",
      [](const std::string &dimacs) {
        auto pf = pmc::parse_dimacs(dimacs);
        return pmc::to_nnf(pmc::compile_ddnnf(pf.formula()));
      },
      py::arg("dimacs"), "d-DNNF of a CNF in c2d format.");

  m.def(
      "count_nnf",
      [](const std::string &nnf) { return to_py(pmc::count_ddnnf(pmc::parse_nnf(nnf))); },
      py::arg("nnf"), "Model count of a d-DNNF via satisfaction probability.");

  m.def(
      "d2c",
      [](const std::string &nnf, const std::vector<pmc::Var> &proj) {
        return pmc::to_d2c_dimacs(pmc::d2c(pmc::parse_nnf(nnf), proj));
      },
      py::arg("nnf"), py::arg("proj"),
      "CNF encoding of the d-DNNF projected onto proj.");

  m.def(
      "gen_uf3sat",
      [](std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
        std::ostringstream s;
        pmc::write_generated({pmc::GenFamily::Uf3Sat, n, m, k, seed}, s);
        return s.str();
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("seed"));

  m.def(
      "gen_circuit",
      [](std::uint32_t n, std::uint32_t c, std::uint32_t k, std::uint64_t seed) {
        std::ostringstream s;
        pmc::write_generated({pmc::GenFamily::Circuit, n, c, k, seed}, s);
        return s.str();
      },
      py::arg("n"), py::arg("c"), py::arg("k"), py::arg("seed"));
}
