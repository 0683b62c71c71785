#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loopfact/errors.hpp"
#include "loopfact/iwasawa.hpp"
#include "loopfact/measures.hpp"
#include "loopfact/report.hpp"
#include "loopfact/su2_factor.hpp"
#include "loopfact/toeplitz.hpp"
#include "loopfact/weyl.hpp"

namespace py = pybind11;
using namespace loopfact;

namespace {

LaurentPoly poly_from_pairs(const std::vector<std::pair<int, cplx>>& coeffs) {
    LaurentPoly p;
    for (const auto& [d, v] : coeffs) p.add_to(d, v);
    return p;
}

std::vector<std::pair<int, cplx>> poly_pairs(const LaurentPoly& p) {
    std::vector<std::pair<int, cplx>> out;
    for (const auto& [d, v] : p.coeffs()) out.emplace_back(d, v);
    return out;
}

AffineWord word_from_letters(const std::vector<int>& letters) {
    AffineWord w;
    w.letters = letters;
    return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SU(2) loop factorization, Toeplitz/Hankel determinant identities, "
              "affine Weyl combinatorics and the disk-loop Iwasawa solver";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<TruncationError>(m, "TruncationError");
    py::register_exception<DegenerateLoopError>(m, "DegenerateLoopError");
    py::register_exception<DivergentIntegralError>(m, "DivergentIntegralError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<LaurentPoly>(m, "LaurentPoly")
        .def(py::init<>())
        .def(py::init(&poly_from_pairs), py::arg("coeffs"),
             "build from a list of (degree, coefficient) pairs")
        .def("coeff", &LaurentPoly::coeff)
        .def("coeffs", &poly_pairs)
        .def("star", &LaurentPoly::star)
        .def("plus_part", &LaurentPoly::plus_part)
        .def("singular_part", &LaurentPoly::singular_part)
        .def("shifted", &LaurentPoly::shifted)
        .def("eval", &LaurentPoly::eval)
        .def("min_deg", &LaurentPoly::min_deg)
        .def("max_deg", &LaurentPoly::max_deg)
        .def("l1_norm", &LaurentPoly::l1_norm)
        .def("__add__",
             [](const LaurentPoly& a, const LaurentPoly& b) { return a + b; })
        .def("__sub__",
             [](const LaurentPoly& a, const LaurentPoly& b) { return a - b; })
        .def("__neg__", [](const LaurentPoly& a) { return -a; })
        .def("__mul__",
             [](const LaurentPoly& a, const LaurentPoly& b) { return a * b; })
        .def("__repr__", [](const LaurentPoly& p) {
            return "LaurentPoly(" + std::to_string(p.coeffs().size()) + " coeffs)";
        });

    py::class_<MatrixLoop>(m, "MatrixLoop")
        .def(py::init<>())
        .def(py::init<LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly>())
        .def_static("identity", &MatrixLoop::identity)
        .def("at", [](const MatrixLoop& g, int i, int j) { return g.at(i, j); })
        .def("eval", &MatrixLoop::eval, py::arg("point"), py::arg("circle_tol") = 1e-9)
        .def("adjoint", &MatrixLoop::adjoint)
        .def("det_poly", &MatrixLoop::det_poly)
        .def("unitarity_residual", &MatrixLoop::unitarity_residual,
             py::arg("samples") = 64)
        .def("max_distance", &MatrixLoop::max_distance, py::arg("other"),
             py::arg("samples") = 64)
        .def("min_deg", &MatrixLoop::min_deg)
        .def("max_deg", &MatrixLoop::max_deg)
        .def("__mul__", &MatrixLoop::operator*);

    m.def("elementary_loop",
          [](int j, cplx zeta, bool positive) {
              return elementary_loop(j, zeta,
                                     positive ? PowerFamily::PositivePower
                                              : PowerFamily::NegativePower);
          },
          py::arg("j"), py::arg("zeta"), py::arg("positive") = false);
    m.def("weyl_s0", &weyl_s0);
    m.def("weyl_s1", &weyl_s1);
    m.def("torus_loop",
          [](const LaurentPoly& chi, int window, double tol) {
              TorusLoopResult t = torus_loop(chi, window, tol);
              return py::make_tuple(t.loop, t.tail_bound);
          },
          py::arg("chi"), py::arg("window") = 24, py::arg("tail_tol") = 1e-10);
    m.def("diagram_automorphism", &diagram_automorphism);

    m.def("b_matrix",
          [](const std::vector<cplx>& x) { return b_matrix(x).matrix; });
    m.def("det_one_plus_bbstar", &det_one_plus_bbstar);
    m.def("hankel_block",
          [](const MatrixLoop& g, int sec) { return hankel_block(g, sec).matrix; });

    py::class_<SigmaValues>(m, "SigmaValues")
        .def_readonly("sigma0_sq", &SigmaValues::sigma0_sq)
        .def_readonly("sigma1_sq", &SigmaValues::sigma1_sq)
        .def_readonly("a", &SigmaValues::a);
    m.def("sigma_values", &sigma_values, py::arg("g"), py::arg("unitary_tol") = 1e-8);
    m.def("toeplitz_det_product", &toeplitz_det_product, py::arg("g"),
          py::arg("unitary_tol") = 1e-8);
    m.def("szego_torus",
          [](const LaurentPoly& chi, int n, double conv_tol, int max_n) {
              SzegoResult s = szego_torus(chi, n, conv_tol, max_n);
              return py::make_tuple(s.value, s.doubling_delta, s.section);
          },
          py::arg("chi"), py::arg("n") = 16, py::arg("conv_tol") = 1e-8,
          py::arg("max_n") = 512);
    m.def("torus_sigma_reference", &torus_sigma_reference);

    m.def("zeta_to_x",
          [](const std::vector<cplx>& z) { return zeta_to_x(ZetaCoords{z}).values; });
    m.def("x_to_zeta",
          [](const std::vector<cplx>& x) { return x_to_zeta(XCoords{x}).values; });
    m.def("x_from_loop",
          [](const MatrixLoop& g) { return x_from_loop(g).values; });
    m.def("x1_series_check",
          [](const std::vector<cplx>& z) { return x1_series_check(ZetaCoords{z}); });
    m.def("product_loop",
          [](const std::vector<cplx>& coords, bool positive) {
              return product_loop(ZetaCoords{coords},
                                  positive ? PowerFamily::PositivePower
                                           : PowerFamily::NegativePower);
          },
          py::arg("coords"), py::arg("positive") = false);
    m.def("y_from_eta",
          [](const std::vector<cplx>& eta) { return y_from_eta(ZetaCoords{eta}).values; });
    m.def("eta_from_y",
          [](const std::vector<cplx>& y) { return eta_from_y(XCoords{y}).values; });

    py::class_<TriangularFactorization>(m, "TriangularFactorization")
        .def_readonly("lower", &TriangularFactorization::lower)
        .def_readonly("a", &TriangularFactorization::a)
        .def_readonly("upper", &TriangularFactorization::upper)
        .def("reconstruct", &TriangularFactorization::reconstruct);
    m.def("factor_unipotent",
          [](const std::vector<cplx>& x) { return factor_unipotent(XCoords{x}); });
    m.def("factor_h", [](const std::vector<cplx>& y) { return factor_h(XCoords{y}); });
    m.def("birkhoff_factor",
          [](const MatrixLoop& g, int lower_window) {
              double rez = 0.0;
              TriangularFactorization f = birkhoff_factor(g, lower_window, &rez);
              return py::make_tuple(f, rez);
          },
          py::arg("g"), py::arg("lower_window"));

    m.def("triple_product",
          [](const std::vector<cplx>& eta, const LaurentPoly& chi,
             const std::vector<cplx>& zeta, int window) {
              TripleProduct tp =
                  triple_product(ZetaCoords{eta}, chi, ZetaCoords{zeta}, window);
              return py::make_tuple(tp.loop, tp.predicted, tp.torus_tail);
          },
          py::arg("eta"), py::arg("chi"), py::arg("zeta"), py::arg("window") = 24);
    m.def("l_matrix",
          [](const std::vector<cplx>& eta, const LaurentPoly& chi,
             const std::vector<cplx>& zeta, int window) {
              return l_matrix(ZetaCoords{eta}, chi, ZetaCoords{zeta}, window);
          },
          py::arg("eta"), py::arg("chi"), py::arg("zeta"), py::arg("window") = 24);

    m.def("jacobian_density",
          [](const std::vector<cplx>& z) { return jacobian_density(ZetaCoords{z}); });
    m.def("jacobian_fd",
          [](const std::vector<cplx>& z, double step) {
              return jacobian_fd(ZetaCoords{z}, step);
          },
          py::arg("zeta"), py::arg("step") = 1e-5);
    m.def("closed_form_integral", [](const std::vector<double>& q) {
        return closed_form_integral(ExponentVector{q});
    });
    m.def("criticality", &criticality, py::arg("p"), py::arg("n"));

    py::class_<IntegralResult>(m, "IntegralResult")
        .def_readonly("value", &IntegralResult::value)
        .def_readonly("stderr_est", &IntegralResult::stderr_est)
        .def_readonly("samples", &IntegralResult::samples)
        .def_readonly("seed", &IntegralResult::seed)
        .def_readonly("method", &IntegralResult::method)
        .def_readonly("proposal", &IntegralResult::proposal);
    m.def("monte_carlo_integral",
          [](const std::vector<double>& q, long long samples, std::uint64_t seed,
             int shards) {
              return monte_carlo_integral(ExponentVector{q}, samples, seed, shards);
          },
          py::arg("q"), py::arg("samples") = 100000, py::arg("seed") = 12345,
          py::arg("shards") = 16);
    m.def("quadrature_integral_n1", &quadrature_integral_n1, py::arg("q0"),
          py::arg("grid") = 20000);
    m.def("haar_density_word",
          [](const std::vector<int>& letters, const std::vector<cplx>& z) {
              return haar_density_word(word_from_letters(letters), ZetaCoords{z});
          });

    m.def("inversion_coroots", [](const std::vector<int>& letters) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (AffineCoroot h : inversion_coroots(word_from_letters(letters)))
            out.emplace_back(h.h1, h.c);
        return out;
    });
    m.def("exponents_minus_Lambda0", [](const std::vector<int>& letters) {
        return exponents(minus_Lambda0(), word_from_letters(letters));
    });
    m.def("exponents_minus_Lambda1", [](const std::vector<int>& letters) {
        return exponents(minus_Lambda1(), word_from_letters(letters));
    });
    m.def("haar_exponents", [](const std::vector<int>& letters) {
        return haar_exponents(word_from_letters(letters));
    });
    m.def("weyl_representative", [](const std::vector<int>& letters) {
        return weyl_representative(word_from_letters(letters));
    });

    py::class_<DiskLoop>(m, "DiskLoop")
        .def(py::init<LaurentPoly, int>(), py::arg("f"), py::arg("samples") = 256)
        .def_readonly("f", &DiskLoop::f)
        .def_readonly("sup_bound", &DiskLoop::sup_bound);
    py::class_<IwasawaData>(m, "IwasawaData")
        .def_readonly("h", &IwasawaData::h)
        .def_readonly("a0", &IwasawaData::a0)
        .def_readonly("l_inv_star", &IwasawaData::l_inv_star)
        .def_readonly("u", &IwasawaData::u)
        .def_readonly("F", &IwasawaData::F)
        .def_readonly("unitarity_residual", &IwasawaData::unitarity_residual)
        .def_readonly("reconstruction_residual", &IwasawaData::reconstruction_residual);
    m.def("solve_h",
          [](const DiskLoop& f, int N, double tol) {
              double interior = 0.0;
              LaurentPoly h = solve_h(f, N, tol, &interior);
              return py::make_tuple(h, interior);
          },
          py::arg("f"), py::arg("N") = 32, py::arg("residual_tol") = 1e-6);
    m.def("recover_factors", &recover_factors, py::arg("f"), py::arg("h"),
          py::arg("grid") = 128);
    m.def("build_F", [](const IwasawaData& data, const DiskLoop& f) {
        double rez = 0.0;
        LaurentPoly F = build_F(data, f, &rez);
        return py::make_tuple(F, rez);
    });

    m.def("verify_report",
          [](const std::string& suite, std::uint64_t seed) {
              RunConfig cfg;
              cfg.suite = suite;
              cfg.seed = seed;
              Report rep = run_verify(cfg);
              return py::make_tuple(rep.render(), rep.all_pass());
          },
          py::arg("suite") = "all", py::arg("seed") = 12345);
    m.def("suite_names", &suite_names);
}
