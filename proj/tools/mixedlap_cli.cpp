#include "mixedlap/config.hpp"
#include "mixedlap/errors.hpp"
#include "mixedlap/run.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Flags {
    std::string config;
    std::optional<double> s;
    std::vector<double> domain;
    std::optional<int> n;
    std::optional<double> f_constant;
    std::vector<double> f_poly;
    std::string f_csv;
    std::string output_dir;
    std::optional<long long> seed;
    std::optional<double> tolerance;
    bool iterative = false;
    bool dump = false;
    std::string example;
    std::optional<int> dim;
    std::optional<double> r;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--s", f.s, "fractional order in (0,1)");
    app->add_option("--n", f.n, "interior mesh nodes");
    app->add_option("--tolerance", f.tolerance, "quadrature tolerance");
    app->add_option("--output-dir", f.output_dir, "output directory");
}

nlohmann::json patch_from(const Flags& f, const std::string& command) {
    nlohmann::json p;
    p["command"] = command;
    if (f.s) p["s"] = *f.s;
    if (!f.domain.empty()) p["domain"] = f.domain;
    if (f.n) p["n"] = *f.n;
    // a flag replaces whatever load the config file names
    const nlohmann::json cleared = {{"constant", nullptr}, {"polynomial", nullptr}, {"csv", nullptr}};
    if (f.f_constant) (p["f"] = cleared)["constant"] = *f.f_constant;
    if (!f.f_poly.empty()) (p["f"] = cleared)["polynomial"] = f.f_poly;
    if (!f.f_csv.empty()) (p["f"] = cleared)["csv"] = f.f_csv;
    if (!f.output_dir.empty()) p["output_dir"] = f.output_dir;
    if (f.seed) p["seed"] = *f.seed;
    if (f.tolerance) p["quad"] = {{"tolerance", *f.tolerance}};
    if (f.iterative) p["iterative"] = true;
    if (!f.example.empty()) p["example"] = f.example;
    if (f.dim) p["dim"] = *f.dim;
    if (f.r) p["r"] = *f.r;
    if (f.dump) p["dump"] = true;
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed local/nonlocal operator -Delta + (-Delta)^s: solver, barriers, checks"};
    app.require_subcommand(1);
    Flags flags;

    auto* solve = app.add_subcommand("solve", "finite element solve with zero exterior data");
    add_common(solve, flags);
    solve->add_option("--domain", flags.domain, "interval endpoints a b")->expected(2);
    auto* fc = solve->add_option("--f-constant", flags.f_constant, "constant load");
    auto* fp = solve->add_option("--f-poly", flags.f_poly, "polynomial load c0 c1 ...");
    auto* fcsv = solve->add_option("--f-csv", flags.f_csv, "sampled load, CSV x,f");
    fc->excludes(fp)->excludes(fcsv);
    fp->excludes(fcsv);
    solve->add_flag("--iterative", flags.iterative, "conjugate gradients instead of Cholesky");

    auto* barrier = app.add_subcommand("barrier", "build and certify the boundary barrier");
    add_common(barrier, flags);
    auto* dump = barrier->add_subcommand("dump", "also write x, beta, gamma, L gamma samples");
    dump->fallthrough();

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify, flags);
    verify->add_option("--domain", flags.domain, "interval endpoints a b")->expected(2);
    verify->add_option("--seed", flags.seed, "seed for random loads");

    auto* counter = app.add_subcommand("counterexample", "maximum principle counterexamples");
    add_common(counter, flags);
    counter->add_option("--example", flags.example, "ces | general | boundary");
    counter->add_option("--dim", flags.dim, "dimension for the general example");
    counter->add_option("--r", flags.r, "outer radius for the boundary example");

    CLI11_PARSE(app, argc, argv);
    flags.dump = dump->parsed();

    std::string command;
    for (auto* sub : {solve, barrier, verify, counter}) {
        if (sub->parsed()) command = sub->get_name();
    }
    try {
        const std::string base = flags.config.empty() ? "" : read_file(flags.config);
        const std::string doc = mixedlap::merge_config(base, patch_from(flags, command).dump());
        const mixedlap::RunConfig cfg = mixedlap::parse_config(doc);
        const mixedlap::RunOutcome out = mixedlap::run(cfg);
        for (const auto& f : out.files) std::cout << f << '\n';
        if (!out.error.empty()) std::cerr << "error: " << out.error << '\n';
        return out.exit_status;
    } catch (const mixedlap::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
}
