// Python bindings: meshes, the mixed error table, multigrid rates and the
// structural checks. Vectors cross the boundary as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "axifem/error.hpp"
#include "axifem/mixed.hpp"
#include "axifem/multigrid.hpp"
#include "axifem/verify.hpp"

namespace py = pybind11;
using namespace axifem;

namespace {

// A V-cycle owns a reference to its hierarchy, so both are kept together.
struct Multigrid {
  std::shared_ptr<MeshHierarchy> hierarchy;
  std::unique_ptr<VCycle> cycle;
};

Multigrid make_multigrid(const std::string& domain, int levels, int k, const std::string& smoother) {
  Multigrid m;
  m.hierarchy = std::make_shared<MeshHierarchy>(parse_domain(domain), levels);
  MultigridOptions options;
  options.smoother = parse_smoother(smoother);
  m.cycle = std::make_unique<VCycle>(*m.hierarchy, FourierMode(k), options);
  return m;
}

py::dict mesh_dict(const MeshLevel& level) {
  py::dict d;
  std::vector<std::array<double, 2>> vertices;
  for (const Point2& p : level.vertices) vertices.push_back({p.r, p.z});
  d["vertices"] = vertices;
  d["triangles"] = level.triangles;
  d["edges"] = level.edges;
  std::vector<std::string> tags;
  for (BoundaryTag t : level.edge_tags) tags.push_back(to_string(t));
  d["edge_tags"] = tags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted H(div) finite elements and multigrid for axisymmetric Fourier modes";
  py::register_exception<Error>(m, "AxifemError", PyExc_ValueError);

  m.def(
      "mesh",
      [](const std::string& domain, int level) {
        const MeshHierarchy h(parse_domain(domain), level);
        return mesh_dict(h.finest());
      },
      py::arg("domain") = "square", py::arg("level") = 1);
  m.def(
      "mesh_json",
      [](const std::string& domain, int level) {
        const MeshHierarchy h(parse_domain(domain), level);
        return mesh_to_json(h.finest());
      },
      py::arg("domain") = "square", py::arg("level") = 1);

  py::class_<MixedErrorRow>(m, "MixedErrorRow")
      .def_readonly("level", &MixedErrorRow::level)
      .def_readonly("err_z", &MixedErrorRow::err_z)
      .def_readonly("err_p", &MixedErrorRow::err_p)
      .def_readonly("err_pis", &MixedErrorRow::err_pis)
      .def_readonly("rate_z", &MixedErrorRow::rate_z)
      .def_readonly("rate_p", &MixedErrorRow::rate_p)
      .def_readonly("rate_pis", &MixedErrorRow::rate_pis);

  m.def(
      "error_table",
      [](const std::string& domain, int k, int max_level, int min_level) {
        return error_table(parse_domain(domain), FourierMode(k), max_level, min_level);
      },
      py::arg("domain") = "square", py::arg("k") = 1, py::arg("max_level") = 5, py::arg("min_level") = 1);
  m.def("mixed_csv", &mixed_csv, py::arg("rows"));
  m.def(
      "manufactured_solution",
      [](int k, double r, double z) {
        const ManufacturedSolution s = manufactured_solution(FourierMode(k));
        const Point2 x{r, z};
        return py::make_tuple(s.p(x), s.z(x), s.f(x));
      },
      py::arg("k"), py::arg("r"), py::arg("z"), "Values (p, z, f) of the manufactured solution at (r, z).");

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("norms", &SolveReport::norms)
      .def_readonly("rate", &SolveReport::rate);

  py::class_<Multigrid>(m, "Multigrid")
      .def(py::init(&make_multigrid), py::arg("domain") = "square", py::arg("levels") = 3, py::arg("k") = 1,
           py::arg("smoother") = "multiplicative")
      .def_property_readonly("num_levels", [](const Multigrid& g) { return g.cycle->num_levels(); })
      .def("dim", [](const Multigrid& g, int l) { return g.cycle->dim(l); }, py::arg("level"))
      .def("lambda_matrix", [](const Multigrid& g, int l) { return Eigen::SparseMatrix<double>(g.cycle->lambda(l)); },
           py::arg("level"))
      .def("cycle", [](const Multigrid& g, int l, const Vector& u, const Vector& f) { return g.cycle->cycle(l, u, f); },
           py::arg("level"), py::arg("u"), py::arg("f"))
      .def("lambda_norm", [](const Multigrid& g, int l, const Vector& x) { return g.cycle->lambda_norm(l, x); },
           py::arg("level"), py::arg("x"))
      .def(
          "solve",
          [](const Multigrid& g, const Vector& f, const Vector& x0, double tol, int max_iters,
             const std::string& statistic) {
            SolveOptions o;
            o.tolerance = tol;
            o.max_iterations = max_iters;
            o.statistic = parse_rate_statistic(statistic);
            return solve_mg(*g.cycle, f, x0, o);
          },
          py::arg("f"), py::arg("x0"), py::arg("tol") = 1e-7, py::arg("max_iters") = 200,
          py::arg("statistic") = "arithmetic")
      .def(
          "contraction",
          [](const Multigrid& g, std::uint64_t seed, double tol) {
            const int l = g.cycle->num_levels();
            SolveOptions o;
            o.tolerance = tol;
            return solve_mg(*g.cycle, Vector::Zero(g.cycle->dim(l)), random_vector(g.cycle->dim(l), seed), o);
          },
          py::arg("seed") = 7, py::arg("tol") = 1e-7, "Iterate from a random start with f = 0.");

  m.def("random_vector", &random_vector, py::arg("n"), py::arg("seed"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("residual", &CheckResult::residual)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def("__repr__", &format_check);

  m.def(
      "verify",
      [](const std::string& suite, const std::string& domain, int k, int level) {
        const MeshHierarchy h(parse_domain(domain), level);
        const FourierMode mode(k);
        if (suite == "complex") return check_complex(h.finest(), mode);
        if (suite == "helmholtz") return check_helmholtz(h.finest(), mode);
        if (suite == "transfer") return check_transfer(h, level, mode);
        if (suite == "interp") {
          const ManufacturedSolution s = manufactured_solution(mode);
          return std::vector<CheckResult>{check_commuting_interp(h.finest(), mode, s.z, s.f)};
        }
        throw Error("unknown suite '" + suite + "'");
      },
      py::arg("suite") = "complex", py::arg("domain") = "square", py::arg("k") = 1, py::arg("level") = 3);
}
