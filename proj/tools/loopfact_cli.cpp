// loopfact: verification CLI for SU(2) loop factorization identities.
//
// Subcommands: verify, factor, integrate, iwasawa, weyl.  Every flag can be
// overridden by an environment variable with the LOOPFACT_ prefix
// (LOOPFACT_TOL, LOOPFACT_TRUNC, LOOPFACT_SAMPLES, LOOPFACT_SEED,
// LOOPFACT_IN, LOOPFACT_OUT, LOOPFACT_SUITE).  Reports are line-delimited
// JSON records followed by a summary object; the exit status is nonzero iff
// a record fails.

#include <CLI11.hpp>
#include <iostream>
#include <fstream>

#include "loopfact/errors.hpp"
#include "loopfact/report.hpp"
#include "loopfact/toeplitz.hpp"

using namespace loopfact;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--tol", cfg.tol, "absolute tolerance for equality checks")
        ->envname("LOOPFACT_TOL");
    cmd->add_option("--trunc", cfg.trunc, "truncation degree / window size")
        ->envname("LOOPFACT_TRUNC");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count")
        ->envname("LOOPFACT_SAMPLES");
    cmd->add_option("--seed", cfg.seed, "deterministic seed")->envname("LOOPFACT_SEED");
    cmd->add_option("--in", cfg.in_path, "input document path")->envname("LOOPFACT_IN");
    cmd->add_option("--out", cfg.out_path, "report output path (default stdout)")
        ->envname("LOOPFACT_OUT");
}

int emit(const Report& rep, const RunConfig& cfg) {
    std::string text = rep.render();
    if (cfg.out_path.empty())
        std::cout << text;
    else
        write_file(cfg.out_path, text);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SU(2) loop factorization and Toeplitz determinant checks"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* verify = app.add_subcommand("verify", "run the module invariant suites");
    add_common(verify, cfg);
    verify->add_option("--suite", cfg.suite,
                       "suite name (loop_core, toeplitz_hankel, su2_factor, measures, "
                       "iwasawa_s2, affine_weyl) or 'all'")
        ->envname("LOOPFACT_SUITE");

    auto* factor = app.add_subcommand("factor", "factor a loop given by coordinates");
    add_common(factor, cfg);
    std::vector<double> zeta_flat, eta_flat, x_flat;
    factor->add_option("--zeta", zeta_flat, "zeta coordinates as re im pairs");
    factor->add_option("--eta", eta_flat, "eta coordinates as re im pairs");
    factor->add_option("--x", x_flat, "x coordinates as re im pairs");
    std::string csv_path;
    factor->add_option("--dump-hankel", csv_path,
                       "write the Hankel section of the loop as CSV");

    auto* integrate = app.add_subcommand("integrate", "check the integral identity");
    add_common(integrate, cfg);
    int n = 1;
    std::vector<double> qvec;
    integrate->add_option("--n", n, "number of levels");
    integrate->add_option("--q", qvec, "exponent vector q_0..q_{n-1}");

    auto* iwasawa = app.add_subcommand("iwasawa", "Iwasawa factorization of a disk loop");
    add_common(iwasawa, cfg);

    auto* weyl = app.add_subcommand("weyl", "affine Weyl word data");
    add_common(weyl, cfg);
    std::string word_text;
    weyl->add_option("--word", word_text, "word over {0,1}, e.g. 0101");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify)) {
            cfg.command = "verify";
            return emit(run_verify(cfg), cfg);
        }
        if (app.got_subcommand(factor)) {
            cfg.command = "factor";
            FactorInput in;
            if (!cfg.in_path.empty()) in = factor_input_from_json(read_file(cfg.in_path));
            auto pairs = [](const std::vector<double>& flat) {
                if (flat.size() % 2 != 0)
                    throw ParseError("coordinate list must have an even number of values");
                std::vector<cplx> v;
                for (size_t i = 0; i + 1 < flat.size(); i += 2)
                    v.emplace_back(flat[i], flat[i + 1]);
                return v;
            };
            if (!zeta_flat.empty()) in.zeta = ZetaCoords{pairs(zeta_flat)};
            if (!eta_flat.empty()) in.eta = ZetaCoords{pairs(eta_flat)};
            if (!x_flat.empty()) in.x = XCoords{pairs(x_flat)};
            if (!csv_path.empty()) {
                MatrixLoop g;
                if (in.eta || in.chi)
                    g = triple_product(in.eta.value_or(ZetaCoords{}),
                                       in.chi.value_or(LaurentPoly{}),
                                       in.zeta.value_or(ZetaCoords{}), cfg.trunc)
                            .loop;
                else if (in.zeta)
                    g = product_loop(*in.zeta, PowerFamily::NegativePower);
                else if (in.x)
                    g = factor_unipotent(*in.x).reconstruct();
                int sec = std::max(1, -g.min_deg());
                std::ofstream csv(csv_path);
                hankel_block(g, sec).to_csv(csv);
            }
            return emit(run_factor(cfg, in), cfg);
        }
        if (app.got_subcommand(integrate)) {
            cfg.command = "integrate";
            ExponentVector q;
            q.q = qvec;
            if (q.q.empty()) q.q.assign(static_cast<size_t>(n), 2.0);
            return emit(run_integrate(cfg, q), cfg);
        }
        if (app.got_subcommand(iwasawa)) {
            cfg.command = "iwasawa";
            if (cfg.in_path.empty()) throw ParseError("iwasawa requires --in <scalar_loop doc>");
            LaurentPoly f = scalar_loop_from_json(read_file(cfg.in_path));
            return emit(run_iwasawa(cfg, f), cfg);
        }
        if (app.got_subcommand(weyl)) {
            cfg.command = "weyl";
            AffineWord word;
            for (char ch : word_text) {
                if (ch == '0')
                    word.letters.push_back(0);
                else if (ch == '1')
                    word.letters.push_back(1);
                else
                    throw ParseError("word must be a string over {0,1}");
            }
            return emit(run_weyl(cfg, word), cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
