#include "kspec/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"Point spectra of composition-operator semigroup generators from Koenigs-domain geometry"};
    app.require_subcommand(1);
    kspec::CommandOptions opts;

    auto add_space = [&](CLI::App* c) {
        c->add_option("--space", opts.space, "dirichlet, hardy or bergman")->capture_default_str();
        c->add_option("--p", opts.p, "Hardy/Bergman exponent p >= 1")->capture_default_str();
        c->add_option("--alpha", opts.alpha, "Bergman weight alpha > -1")->capture_default_str();
        c->add_option("--engine", opts.engine, "hyperbolic Dirichlet engine: abscissa or tail")->capture_default_str();
    };
    auto add_grid = [&](CLI::App* c) {
        c->add_option("--window", opts.window, "re_lo,re_hi,im_lo,im_hi")->capture_default_str();
        c->add_option("--n", opts.grid, "cells per axis, N or NX,NY")->capture_default_str();
    };

    const std::map<std::string, std::string> about{
        {"classify", "semigroup class, step type and orientation"},
        {"geometry", "cross sections, W, decay exponent, critical abscissa, argument profile"},
        {"spectrum", "point spectrum region or inner/outer bracket"},
        {"member", "membership of one lambda, with oracle fallback"},
        {"raster", "membership over a grid as CSV or SVG"},
        {"oracle-compare", "theorem region against the area-integral oracle on a grid"},
        {"growth", "growth type and orbit speed with norm bounds"}};
    for (const std::string& name : kspec::command_names()) {
        CLI::App* c = app.add_subcommand(name, about.at(name));
        c->add_option("--spec", opts.spec_path, "domain spec JSON file")->required();
        c->add_option("--out", opts.out, "write the artifact to this path instead of stdout");
        if (name == "spectrum" || name == "member" || name == "raster" || name == "oracle-compare" || name == "growth")
            add_space(c);
        if (name == "member") {
            c->add_option("--lambda", opts.lambda, "re,im")->required();
            c->add_flag("!--no-oracle", opts.oracle, "skip the oracle fallback for bracket gaps");
        }
        if (name == "raster" || name == "oracle-compare") add_grid(c);
        if (name == "raster") c->add_option("--format", opts.format, "csv or svg")->capture_default_str();
        if (name == "growth") c->add_option("--tmax", opts.tmax, "largest orbit time")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kspec::kExitSpec;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    return kspec::run_command(name, opts, std::cout, std::cerr);
}
