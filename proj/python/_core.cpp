#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seshadri/bounds.hpp"
#include "seshadri/cli.hpp"
#include "seshadri/error.hpp"
#include "seshadri/fatpoints.hpp"
#include "seshadri/radical.hpp"
#include "seshadri/verify.hpp"

#include <sstream>

namespace py = pybind11;
using namespace seshadri;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::uint32_t> primes_or_default(const std::optional<std::vector<std::uint32_t>>& primes) {
  return primes ? *primes : default_primes(2);
}

Rational coordinate(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return parse_rational(py::str(h).cast<std::string>());
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  throw InvalidArgument("coordinates must be int or rational strings such as '3/4'");
}

py::object alpha_random(int n, const std::vector<int>& mults, int trials,
                        const std::optional<std::vector<std::uint32_t>>& primes, std::uint64_t seed, bool scan,
                        bool with_witness) {
  AlphaResult res;
  {
    py::gil_scoped_release release;
    res = alpha_generic(n, mults, trials, primes_or_default(primes), seed, scan);
  }
  nlohmann::json j = to_json(res);
  if (with_witness) j["witness"] = witness_json(res);
  return to_python(j);
}

py::object alpha_explicit(int n, const py::list& points, const std::vector<int>& mults,
                          const std::optional<std::vector<std::uint32_t>>& primes, bool scan, bool certify_result) {
  std::vector<RationalPoint> pts;
  for (const auto& row : points) {
    RationalPoint p;
    for (const auto& c : row) p.push_back(coordinate(c));
    pts.push_back(std::move(p));
  }
  FatPointScheme scheme{PointConfiguration::from_rational(n, std::move(pts), true), mults};
  AlphaOptions options;
  options.primes = primes_or_default(primes);
  options.scan = scan;
  AlphaResult res;
  Certificate cert;
  {
    py::gil_scoped_release release;
    res = alpha(scheme, options);
    if (certify_result) cert = certify(res);
  }
  nlohmann::json j = to_json(res);
  if (certify_result) j["certified"] = cert.ok;
  return to_python(j);
}

int compare(const std::string& a, const std::string& b) {
  auto c = radical_cmp(parse_radical(a), parse_radical(b));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

py::object bounds(int n, int r, long long ln, const std::string& eps_point, const std::vector<std::string>& assume) {
  SurfaceContext ctx;
  ctx.n = n;
  ctx.self_intersection = Integer(std::to_string(ln));
  if (eps_point == "steffens") {
    ctx.eps_point = steffens_lower(ctx.self_intersection);
  } else {
    ctx.eps_point.value = parse_radical(eps_point);
    ctx.eps_point.n = n;
    ctx.eps_point.kind = BoundKind::Lower;
    ctx.eps_point.source = "user";
  }
  std::set<Assumption> allowed;
  for (const auto& a : assume) allowed.insert(parse_assumption(a));
  return to_python(to_json(best_bounds(ctx, r, allowed)));
}

py::object sweep(int n, int r, int mmax, int trials, const std::optional<std::vector<std::uint32_t>>& primes,
                 std::uint64_t seed) {
  SweepResult s;
  {
    py::gil_scoped_release release;
    s = eps_upper_sweep(n, r, mmax, trials, primes_or_default(primes), seed);
  }
  return to_python(to_json(s));
}

std::size_t generic_rank(int n, const std::vector<int>& mults, int degree, std::uint32_t prime, std::uint64_t seed) {
  py::gil_scoped_release release;
  PrimeField field(prime);
  auto config = PointConfiguration::random(n, mults.size(), field, seed);
  return rank(build_condition_matrix(FatPointScheme{config, mults}, degree, field).matrix);
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fat-point interpolation degrees and Seshadri-constant bounds";
  m.attr("__version__") = SESHADRI_VERSION;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DegenerateScheme>(m, "DegenerateScheme", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_ArithmeticError);

  m.def("default_primes", &default_primes, py::arg("count") = kDefaultPrimes.size());
  m.def("alpha_generic", &alpha_random, py::arg("n"), py::arg("mults"), py::arg("trials") = 2,
        py::arg("primes") = py::none(), py::arg("seed") = 0, py::arg("scan") = false, py::arg("witness") = false,
        "Maximum alpha over seeded random configurations, as a dict.");
  m.def("alpha", &alpha_explicit, py::arg("n"), py::arg("points"), py::arg("mults"), py::arg("primes") = py::none(),
        py::arg("scan") = false, py::arg("certify") = false,
        "Alpha of explicit rational points given as lists of ints or 'p/q' strings.");
  m.def("expected_alpha", [](int n, const std::vector<int>& mults) { return expected_alpha(n, mults); },
        py::arg("n"), py::arg("mults"));
  m.def("generic_rank", &generic_rank, py::arg("n"), py::arg("mults"), py::arg("degree"),
        py::arg("prime") = kDefaultPrimes[0], py::arg("seed") = 0);
  m.def("double_point_status",
        [](int n, int d, int r) { return std::string(to_string(ah_double_point_status(n, d, r))); }, py::arg("n"),
        py::arg("d"), py::arg("r"));

  m.def("radical", [](const std::string& text) { return to_string(parse_radical(text)); }, py::arg("text"),
        "Canonical form of a radical literal such as '2*(12/121)^(1/2)'.");
  m.def("radical_json", [](const std::string& text) { return to_python(to_json(parse_radical(text))); },
        py::arg("text"));
  m.def("radical_cmp", &compare, py::arg("a"), py::arg("b"), "Exact comparison: -1, 0 or 1.");
  m.def("radical_float", [](const std::string& text) { return parse_radical(text).to_double(); }, py::arg("text"));

  m.def("bounds", &bounds, py::arg("n"), py::arg("r"), py::arg("Ln") = 1, py::arg("eps_point") = "1",
        py::arg("assume") = std::vector<std::string>{});
  m.def("sweep", &sweep, py::arg("n"), py::arg("r"), py::arg("mmax"), py::arg("trials") = 2,
        py::arg("primes") = py::none(), py::arg("seed") = 0);
  m.def(
      "symmetrization_chain",
      [](int n, int r, int d, const std::vector<int>& mults, int k) {
        return to_python(to_json(symmetrization_chain(n, r, d, mults, k)));
      },
      py::arg("n"), py::arg("r"), py::arg("d"), py::arg("mults"), py::arg("k"));

  m.def("run_cli", &cli, py::arg("args"), "Runs the command line and returns (exit_code, stdout, stderr).");
}
