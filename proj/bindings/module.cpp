#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "evalues/calibration.hpp"
#include "evalues/cross_merging.hpp"
#include "evalues/e_merging.hpp"
#include "evalues/multiple_testing.hpp"
#include "evalues/oracle.hpp"
#include "evalues/p_merging.hpp"
#include "evalues/rng.hpp"
#include "evalues/simulation.hpp"

namespace py = pybind11;
using namespace evalues;

namespace {

CalibratorSpec spec_from_string(const std::string& kind, double kappa) {
  if (kind == "power") return CalibratorSpec::power(kappa);
  if (kind == "integrated") return CalibratorSpec::integrated();
  if (kind == "h") return CalibratorSpec::h(kappa);
  if (kind == "f") return CalibratorSpec::f(kappa);
  throw std::invalid_argument("unknown calibrator kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "e-value calibration, merging, multiple testing, and simulation";

  // numerics
  m.def("std_normal_cdf", &std_normal_cdf, py::arg("x"));
  m.def("chi2_survival_even", &chi2_survival_even, py::arg("dof"), py::arg("x"));
  m.def("lower_incomplete_gamma", &lower_incomplete_gamma, py::arg("a"), py::arg("z"));
  m.def("inverse_normal_cdf", &inverse_normal_cdf, py::arg("p"));

  // calibration
  m.def("calibrate_power", &calibrate_power, py::arg("p"), py::arg("kappa"));
  m.def("calibrate_integrated", &calibrate_integrated, py::arg("p"));
  m.def("calibrate_h", &calibrate_h, py::arg("p"), py::arg("kappa"));
  m.def("calibrate_f_kappa", &calibrate_f_kappa, py::arg("p"), py::arg("kappa"));
  m.def("vs_bound", &vs_bound, py::arg("p"));
  m.def("e_to_p", &e_to_p, py::arg("e"));
  m.def("jeffreys_category",
        [](double e) { return std::string(jeffreys_label(jeffreys_category(e))); },
        py::arg("e"));
  m.def(
      "check_calibrator",
      [](const std::string& kind, double kappa, double tol) {
        auto f = make_calibrator(spec_from_string(kind, kappa));
        CalibratorCheck c = check_calibrator(f, tol);
        return py::make_tuple(c.valid, c.integral, c.excess);
      },
      py::arg("kind"), py::arg("kappa") = 1.0, py::arg("tol") = 1e-6,
      "returns (valid, integral, excess) for a registry calibrator");

  // e-merging
  m.def("arithmetic_mean",
        [](const std::vector<double>& e) { return arithmetic_mean(e); }, py::arg("e"));
  m.def("convex_mixture",
        [](double lam, const std::vector<double>& e) { return convex_mixture(lam, e); },
        py::arg("lam"), py::arg("e"));
  m.def("u_statistic",
        [](int n, const std::vector<double>& e) { return u_statistic(n, e); },
        py::arg("n"), py::arg("e"));
  m.def("u_mixture",
        [](const std::vector<double>& w, const std::vector<double>& e) {
          return u_mixture(w, e);
        },
        py::arg("weights"), py::arg("e"));
  m.def("product", [](const std::vector<double>& e) { return product(e); }, py::arg("e"));
  m.def("ruger_e", [](int k, const std::vector<double>& e) { return ruger_e(k, e); },
        py::arg("k"), py::arg("e"));
  m.def("e_simes", [](const std::vector<double>& e) { return e_simes(e); }, py::arg("e"));
  m.def("m_family_e",
        [](double r, const std::vector<double>& e) { return m_family_e(r, e); },
        py::arg("r"), py::arg("e"));

  // p-merging
  m.def("bonferroni", [](const std::vector<double>& p) { return bonferroni(p); },
        py::arg("p"));
  m.def("ruger_p", [](int k, const std::vector<double>& p) { return ruger_p(k, p); },
        py::arg("k"), py::arg("p"));
  m.def("simes", [](const std::vector<double>& p) { return simes(p); }, py::arg("p"));
  m.def("fisher", [](const std::vector<double>& p) { return fisher(p); }, py::arg("p"));
  m.def("maximum", [](const std::vector<double>& p) { return maximum(p); }, py::arg("p"));

  // cross-merging
  m.def("e_to_p_merge", [](const std::vector<double>& e) { return e_to_p_merge(e); },
        py::arg("e"));
  m.def("p_to_e_merge",
        [](double kappa, const std::vector<double>& p) { return p_to_e_merge(kappa, p); },
        py::arg("kappa"), py::arg("p"));
  m.def("p_to_e_mixture",
        [](const std::vector<double>& w,
           const std::vector<std::pair<std::string, double>>& specs,
           const std::vector<double>& p) {
          std::vector<CalibratorSpec> cs;
          cs.reserve(specs.size());
          for (const auto& [kind, kappa] : specs) cs.push_back(spec_from_string(kind, kappa));
          return p_to_e_mixture(w, cs, p);
        },
        py::arg("weights"), py::arg("calibrators"), py::arg("p"),
        "calibrators are (kind, kappa) pairs, kind in {power, integrated, h, f}");
  m.def("ville_se_to_p", [](const std::vector<double>& e) { return ville_se_to_p(e); },
        py::arg("e"));

  // multiple testing
  py::class_<AdjustedEValues>(m, "AdjustedEValues")
      .def_readonly("original", &AdjustedEValues::original)
      .def_readonly("adjusted", &AdjustedEValues::adjusted)
      .def_readonly("ordering", &AdjustedEValues::ordering);
  py::class_<AdjustedPValues>(m, "AdjustedPValues")
      .def_readonly("original", &AdjustedPValues::original)
      .def_readonly("adjusted", &AdjustedPValues::adjusted)
      .def_readonly("ordering", &AdjustedPValues::ordering);

  m.def("adjust_e_average",
        [](const std::vector<double>& e) { return adjust_e_average(e); }, py::arg("e"));
  m.def("adjust_e_product",
        [](const std::vector<double>& e, bool literal) {
          return adjust_e_product(e, literal);
        },
        py::arg("e"), py::arg("pseudocode_literal") = false);
  m.def("holm_adjust", [](const std::vector<double>& p) { return holm_adjust(p); },
        py::arg("p"));
  m.def("hommel_adjust", [](const std::vector<double>& p) { return hommel_adjust(p); },
        py::arg("p"));
  m.def("fact_fisher", [](const std::vector<double>& p) { return fact_fisher(p); },
        py::arg("p"));
  m.def("fact",
        [](const std::string& method, const std::vector<double>& p) {
          std::function<double(std::span<const double>)> F;
          if (method == "bonferroni") F = [](std::span<const double> q) { return bonferroni(q); };
          else if (method == "simes") F = [](std::span<const double> q) { return simes(q); };
          else if (method == "fisher") F = [](std::span<const double> q) { return fisher(q); };
          else if (method == "maximum") F = [](std::span<const double> q) { return maximum(q); };
          else throw std::invalid_argument("unknown fact method: " + method);
          return fact_generic(F, p);
        },
        py::arg("method"), py::arg("p"));

  // oracle
  m.def("merge_catalogue", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : merge_catalogue())
      out.emplace_back(f.name, f.merge_class == MergeClass::arbitrary ? "arbitrary"
                               : f.merge_class == MergeClass::sequential ? "sequential"
                                                                         : "independent");
    return out;
  });
  m.def("check_e_merging_validity",
        [](const std::string& name, int trials, uint64_t seed) {
          const MergeFunction& fn = find_merge_function(name);
          ValidityResult r = check_e_merging_validity(fn.fn, fn.merge_class, trials, seed);
          return py::make_tuple(r.pass, r.worst_excess, r.describe());
        },
        py::arg("name"), py::arg("trials") = 10000, py::arg("seed") = 1,
        "returns (pass, worst_excess, description) for a catalogue function");
  m.def("brute_closure_e",
        [](const std::string& merge, const std::vector<double>& e) {
          const MergeFunction& fn = find_merge_function(merge);
          return brute_closure_e(fn.fn, e);
        },
        py::arg("merge"), py::arg("e"));
  m.def("brute_closure_p",
        [](const std::string& merge, const std::vector<double>& p) {
          std::function<double(std::span<const double>)> F;
          if (merge == "bonferroni") F = [](std::span<const double> q) { return bonferroni(q); };
          else if (merge == "simes") F = [](std::span<const double> q) { return simes(q); };
          else if (merge == "fisher") F = [](std::span<const double> q) { return fisher(q); };
          else if (merge == "maximum") F = [](std::span<const double> q) { return maximum(q); };
          else throw std::invalid_argument("unknown p-merging function: " + merge);
          return brute_closure_p(F, p);
        },
        py::arg("merge"), py::arg("p"));

  // simulation
  py::class_<SeriesTable>(m, "SeriesTable")
      .def_readonly("columns", &SeriesTable::columns)
      .def_readonly("index", &SeriesTable::index)
      .def_readonly("values", &SeriesTable::values)
      .def("at", &SeriesTable::at, py::arg("index"), py::arg("column"))
      .def("to_csv", [](const SeriesTable& t) { return to_csv(t); });

  m.def("lr_evalue", &lr_evalue, py::arg("x"), py::arg("delta"));
  m.def("neyman_pearson_pvalue", &neyman_pearson_pvalue, py::arg("x"));
  m.def("mixture_evalue", &mixture_evalue, py::arg("x"), py::arg("delta"));
  m.def("universal_martingale",
        [](const std::vector<double>& xs) { return universal_martingale(xs); },
        py::arg("xs"));
  m.def("run_combining_experiment",
        [](double delta, int n_obs, int n_seeds, double fraction_alternative,
           const std::vector<std::string>& methods, uint64_t seed_base) {
          CombiningConfig cfg{delta, n_obs, n_seeds, fraction_alternative, methods};
          return run_combining_experiment(cfg, seed_base);
        },
        py::arg("delta"), py::arg("n_obs"), py::arg("n_seeds"),
        py::arg("fraction_alternative") = 1.0,
        py::arg("methods") = std::vector<std::string>{"product-lr", "universal"},
        py::arg("seed_base") = 0);
  m.def("run_multiple_experiment",
        [](int n_hypotheses, int n_false, double delta, int n_seeds,
           const std::vector<std::string>& methods, uint64_t seed_base) {
          MultipleConfig cfg{n_hypotheses, n_false, delta, n_seeds, methods};
          return run_multiple_experiment(cfg, seed_base);
        },
        py::arg("n_hypotheses"), py::arg("n_false"), py::arg("delta"),
        py::arg("n_seeds"),
        py::arg("methods") = std::vector<std::string>{"avg-adjust", "holm", "hommel"},
        py::arg("seed_base") = 0);
}
