// wmc: weighted model sets and their correlations.

#include <iostream>

#include <CLI11.hpp>

#include "wmc/commands.hpp"

namespace {

void add_tau(CLI::App* cmd, std::optional<double>& tx, std::optional<double>& ty) {
    cmd->add_option("--tau-x", tx, "window shift x (default e/10 * rho)");
    cmd->add_option("--tau-y", ty, "window shift y (default pi/10 * rho)");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace wmc::cli;
    CLI::App app{"Weighted model sets: exact pattern frequencies, shield-tiling patches and correlation checks"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

    VerifyPeriodicOptions verify;
    auto* v = app.add_subcommand("verify-periodic", "compare two mod-N weightings exactly");
    v->add_option("--weights-a", verify.weights_a, "weighting JSON (default: bundled ws1)")->check(CLI::ExistingFile);
    v->add_option("--weights-b", verify.weights_b, "weighting JSON (default: bundled ws2)")->check(CLI::ExistingFile);
    v->add_option("--nmax", verify.n_max, "largest pattern length")->check(CLI::Range(1, 8));
    v->add_option("--expect-equal-through", verify.expect_equal_through, "claimed highest equal n");
    v->add_option("--out", verify.out_dir, "directory for pattern tables and the certificate");

    GenPatchOptions gen;
    auto* g = app.add_subcommand("gen-patch", "enumerate a coloured shield-tiling vertex patch");
    g->add_option("--radius", gen.radius, "half-width R of the counting box");
    g->add_option("--margin", gen.margin, "extra enumeration width");
    g->add_option("--rho", gen.rho, "dodecagon circumradius");
    add_tau(g, gen.tau_x, gen.tau_y);
    g->add_option("--out", gen.out, "patch CSV (metadata goes next to it as .json)");

    CorrelateOptions corr;
    auto* c = app.add_subcommand("correlate", "compare correlation coefficients of two weightings on a patch");
    c->add_option("--patch", corr.patch, "patch CSV")->required()->check(CLI::ExistingFile);
    c->add_option("--weights-a", corr.weights_a, "weighting JSON (default: bundled ws1)")->check(CLI::ExistingFile);
    c->add_option("--weights-b", corr.weights_b, "weighting JSON (default: bundled ws2)")->check(CLI::ExistingFile);
    c->add_option("--nmax", corr.n_max, "largest tuple length")->check(CLI::Range(1, 5));
    c->add_option("--tuples", corr.tuples, "tuple JSON file or 'auto'");
    c->add_option("--count", corr.auto_count, "number of random tuples in auto mode");
    c->add_option("--seed", corr.seed, "seed for random tuples");
    c->add_option("--out", corr.out, "JSON report path");

    ThinOptions thin;
    auto* t = app.add_subcommand("thin", "Bernoulli thinning with colour-dependent probabilities");
    t->add_option("--patch", thin.patch, "patch CSV")->required()->check(CLI::ExistingFile);
    t->add_option("--probs", thin.probs, "probabilities or weighting JSON")->required()->check(CLI::ExistingFile);
    t->add_option("--seed", thin.seed, "seed");
    t->add_option("--out", thin.out, "realization CSV");

    RenderOptions render;
    auto* r = app.add_subcommand("render", "draw a patch as SVG");
    r->add_option("--patch", render.patch, "patch CSV")->required()->check(CLI::ExistingFile);
    r->add_option("--out", render.out, "SVG path");
    r->add_option("--palette", render.palette, "mono or colour");

    PipelineOptions pipe;
    auto* p = app.add_subcommand("pipeline", "run every stage and write a pass/fail summary");
    p->add_option("--radius", pipe.radius, "half-width R of the counting box");
    p->add_option("--margin", pipe.margin, "extra enumeration width");
    p->add_option("--rho", pipe.rho, "dodecagon circumradius");
    add_tau(p, pipe.tau_x, pipe.tau_y);
    p->add_option("--seed", pipe.seed, "seed for anything randomized");
    p->add_option("--thinning-seeds", pipe.thinning_seeds, "realizations for the thinning check")->check(CLI::Range(2, 100000));
    p->add_option("--weights-a", pipe.weights_a, "weighting JSON (default: bundled ws1)")->check(CLI::ExistingFile);
    p->add_option("--weights-b", pipe.weights_b, "weighting JSON (default: bundled ws2)")->check(CLI::ExistingFile);
    p->add_option("--out", pipe.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*v) {
            verify.threads = threads;
            return cmd_verify_periodic(verify, std::cout, std::cerr);
        }
        if (*g) {
            gen.threads = threads;
            return cmd_gen_patch(gen, std::cout, std::cerr);
        }
        if (*c) {
            corr.threads = threads;
            return cmd_correlate(corr, std::cout, std::cerr);
        }
        if (*t) return cmd_thin(thin, std::cout, std::cerr);
        if (*r) return cmd_render_svg(render, std::cout, std::cerr);
        pipe.threads = threads;
        return cmd_full_pipeline(pipe, std::cout, std::cerr);
    } catch (...) {
        return exit_code_for_current_exception(std::cerr);
    }
}
