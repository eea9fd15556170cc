#include "cpfol/cli.hpp"

#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpfol/errors.hpp"
#include "cpfol/io.hpp"
#include "cpfol/metric.hpp"
#include "cpfol/singular.hpp"
#include "cpfol/transport.hpp"
#include "cpfol/util.hpp"
#include "json.hpp"

namespace cpfol {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Doubles and complex values enter reports pre-formatted at 17
// significant digits; integers, booleans and labels stay native.
Json num(double x) { return fmt17(x); }
Json num(Cx z) { return fmt17(z); }

void flatten(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
        if (j.empty()) out += prefix + " = []\n";
        return;
    }
    out += prefix + " = ";
    if (j.is_string()) {
        out += j.get<std::string>();
    } else {
        out += j.dump();
    }
    out += '\n';
}

std::string render(const Json& rep, const std::string& format) {
    if (format == "json") return rep.dump(2) + "\n";
    std::string out;
    flatten(rep, "", out);
    return out;
}

const char* sing_class_name(SingClass c) {
    switch (c) {
        case SingClass::degenerate: return "degenerate";
        case SingClass::nondegenerate_nonhyperbolic: return "nondegenerate_nonhyperbolic";
        case SingClass::hyperbolic: return "hyperbolic";
    }
    return "degenerate";
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::borderline: return "borderline";
    }
    return "borderline";
}

struct Options {
    std::string input;
    std::string output;
    std::string format = "text";
    std::uint64_t seed = 1;
    int jobs = 1;
    double tol = 1e-9;
    double loop_radius = 0.0; // 0: automatic
    int jet_order = kJetOrderDefault;
    int word_len = 6;
    double eps = 0.02;
    int budget = 0; // 0: command default
    double box = 0.0; // 0: command default
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "input JSON document")->required();
    cmd->add_option("--output", o.output, "write the report here instead of stdout");
    cmd->add_option("--format", o.format, "report format (default text)")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", o.seed, "seed for all randomized choices (default 1)");
    cmd->add_option("--jobs", o.jobs, "worker threads; the report bytes do not depend on it")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--tol", o.tol, "tolerance for tolerance-gated flags (default 1e-9)");
}

Json singularity_row(const InfinitySingularity& s) {
    Json row;
    row["a"] = num(s.a);
    row["eigen_top"] = num(s.eigen_top);
    row["eigen_bottom"] = num(s.eigen_bottom);
    row["lambda"] = num(s.lambda);
    row["multiplier"] = num(s.multiplier);
    row["abs_multiplier"] = num(std::abs(s.multiplier));
    row["hyperbolic"] = s.hyperbolic;
    return row;
}

Json run_classify(const Options& o) {
    const Foliation f = parse_foliation(read_file(o.input)).fol;
    Json rep;
    rep["command"] = "classify";
    rep["name"] = f.name;
    rep["affine_degree"] = f.affine_degree;
    rep["geometric_degree"] = geometric_degree(f);
    rep["infinity_is_leaf"] = infinity_is_leaf(f);
    rep["pl_property"] = pl_property(f);
    rep["global_vector_field"] = is_global_vector_field(f);
    const InvariantLines lines = invariant_lines(f, o.tol);
    rep["invariant_lines"]["pencil"] = lines.pencil;
    Json rows = Json::array();
    for (const Poly2& l : lines.lines) {
        Json row;
        row["x"] = num(l.coeff(1, 0));
        row["y"] = num(l.coeff(0, 1));
        row["const"] = num(l.coeff(0, 0));
        rows.push_back(row);
    }
    rep["invariant_lines"]["count"] = static_cast<int>(lines.lines.size());
    rep["invariant_lines"]["lines"] = rows;
    return rep;
}

Json run_sing(const Options& o) {
    const Foliation f = parse_foliation(read_file(o.input)).fol;
    Json rep;
    rep["command"] = "sing";
    rep["name"] = f.name;
    const auto sings = infinity_singularities(f);
    Json rows = Json::array();
    for (const auto& s : sings) rows.push_back(singularity_row(s));
    rep["infinity"]["count"] = static_cast<int>(sings.size());
    rep["infinity"]["points"] = rows;
    if (pl_property(f)) {
        rep["residue_defect"] = num(residue_identity_defect(f));
        Cx prod(1.0);
        for (const auto& s : sings) prod *= s.multiplier;
        rep["multiplier_product"] = num(prod);
    }
    SearchBox box;
    if (o.box > 0.0) box.half_width = o.box;
    const AffineSingularityList aff = affine_singularities(f, box);
    Json arows = Json::array();
    for (const auto& s : aff.points) {
        Json row;
        row["x"] = num(s.x);
        row["y"] = num(s.y);
        row["sigma1"] = num(s.sigma1);
        row["sigma2"] = num(s.sigma2);
        row["classification"] = sing_class_name(s.classification);
        arows.push_back(row);
    }
    rep["affine"]["bezout"] = aff.bezout;
    rep["affine"]["count"] = static_cast<int>(aff.points.size());
    rep["affine"]["points"] = arows;
    const HyperbolicityReport h = hyperbolicity_report(f);
    rep["hyperbolicity"]["pl"] = h.pl;
    rep["hyperbolicity"]["applicable"] = h.applicable;
    rep["hyperbolicity"]["multipliers_off_circle"] = tri_name(h.multipliers_off_circle);
    rep["hyperbolicity"]["tangent_group_dense"] = tri_name(h.tangent_group_dense);
    rep["hyperbolicity"]["density_class"] = h.density_class;
    return rep;
}

Json run_monodromy(const Options& o) {
    const Foliation f = parse_foliation(read_file(o.input)).fol;
    const auto sings = infinity_singularities(f);
    struct Row {
        Cx analytic, variational, integral;
    };
    std::vector<Row> rows(sings.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(sings.size(), o.jobs, [&](std::size_t j) {
        try {
            rows[j].analytic = sings[j].multiplier;
            rows[j].variational =
                infinity_monodromy(f, static_cast<int>(j), o.loop_radius).multiplier_variational;
            rows[j].integral = multiplier_by_integral(f, static_cast<int>(j), o.loop_radius);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    Json rep;
    rep["command"] = "monodromy";
    rep["name"] = f.name;
    Json table = Json::array();
    double worst = 0.0;
    for (std::size_t j = 0; j < sings.size(); ++j) {
        Json row;
        row["a"] = num(sings[j].a);
        row["lambda"] = num(sings[j].lambda);
        row["analytic"] = num(rows[j].analytic);
        row["variational"] = num(rows[j].variational);
        row["integral"] = num(rows[j].integral);
        const double dev = std::max({std::abs(rows[j].analytic - rows[j].variational),
                                     std::abs(rows[j].analytic - rows[j].integral),
                                     std::abs(rows[j].variational - rows[j].integral)});
        row["max_pairwise_deviation"] = num(dev);
        worst = std::max(worst, dev);
        table.push_back(row);
    }
    rep["points"] = table;
    rep["max_deviation"] = num(worst);
    return rep;
}

Json run_koenigs(const Options& o) {
    GermDoc doc = parse_germ(read_file(o.input));
    if (o.jet_order != doc.jet.order()) {
        // Re-truncate (or zero-pad) the germ at the requested order.
        std::vector<Cx> c;
        for (int k = 1; k <= std::min(o.jet_order, doc.jet.order()); ++k)
            c.push_back(doc.jet.coeff[k]);
        doc.jet = make_jet(c, o.jet_order);
    }
    Json rep;
    rep["command"] = "koenigs";
    rep["nu"] = num(doc.jet.nu());
    rep["order"] = doc.jet.order();
    const Jet zeta = koenigs_jet(doc.jet);
    Json coeffs = Json::array();
    for (int k = 1; k <= zeta.order(); ++k) coeffs.push_back(num(zeta.coeff[k]));
    rep["zeta_coeff"] = coeffs;

    // Iterative spot checks: certified limits against the jet.
    const bool contracting = std::abs(doc.jet.nu()) < 1.0;
    const GermFun fun =
        contracting ? germ_fun(doc.jet, doc.radius) : germ_fun_inverse(doc.jet, doc.radius);
    Rng rng(o.seed);
    Json checks = Json::array();
    for (int s = 0; s < 4; ++s) {
        const Cx z = rng.complex_in_box(0.02 * doc.radius);
        Json row;
        row["z"] = num(z);
        try {
            const auto it = koenigs_iterative(fun, z, 400, 1e-13);
            row["iterative"] = num(it.value);
            row["jet"] = num(jet_eval(zeta, z));
            row["difference"] = num(std::abs(it.value - jet_eval(zeta, z)));
            row["certificate"] = num(it.certificate);
            row["iterations"] = it.iterations;
        } catch (const ContractionRadiusNotFound& e) {
            row["skipped"] = std::string(e.what());
        }
        checks.push_back(row);
    }
    rep["spot_checks"] = checks;
    return rep;
}

Json run_orbit(const Options& o) {
    const OrbitDoc doc = parse_orbit_doc(read_file(o.input));
    const int max_points = o.budget > 0 ? o.budget : 20000;
    const PseudoOrbit orb =
        pseudo_orbit(doc.germs, doc.z0, o.word_len, doc.reference_radius, max_points);
    Json rep;
    rep["command"] = "orbit";
    rep["generators"] = static_cast<int>(doc.germs.size());
    rep["z0"] = num(doc.z0);
    rep["points"] = static_cast<int>(orb.points.size());
    rep["pruned"] = orb.pruned;
    rep["truncated"] = orb.truncated;
    Json rows = Json::array();
    for (const auto& op : orb.points) {
        Json row;
        std::string word;
        for (const auto& [gi, e] : op.word.letters) {
            if (!word.empty()) word += ' ';
            word += (e > 0 ? "+" : "-") + std::to_string(gi + 1);
        }
        row["word"] = word;
        row["point"] = num(op.point);
        row["domain_radius"] = num(op.word.domain_radius);
        rows.push_back(row);
    }
    rep["orbit"] = rows;
    return rep;
}

Json run_density(const Options& o) {
    const std::vector<Cx> gens = parse_generators(read_file(o.input));
    DensityBudget budget;
    if (o.budget > 0) budget.max_points = o.budget;
    const GroupClosure gc = additive_group_density(gens, o.eps, budget);
    Json rep;
    rep["command"] = "density";
    rep["generators"] = static_cast<int>(gens.size());
    rep["eps"] = num(o.eps);
    rep["classification"] = to_string(gc.classification);
    rep["rank_estimate"] = gc.rank_estimate;
    Json basis = Json::array();
    for (Cx b : gc.lattice_basis) basis.push_back(num(b));
    rep["lattice_basis"] = basis;
    if (gc.line_direction != Cx(0)) rep["line_direction"] = num(gc.line_direction);
    rep["net_coverage"] = num(gc.net_coverage);
    rep["net_certified"] = gc.net_certified;
    rep["torus_points"] = gc.torus_points;
    rep["note"] = gc.note;
    return rep;
}

Json run_trace(const Options& o) {
    const FoliationDoc doc = parse_foliation(read_file(o.input));
    if (!doc.x0 || !doc.y0)
        throw ParseError("trace requires \"x0\" and \"y0\" in the input document");
    TraceBudget budget;
    if (o.budget > 0) budget.max_steps = o.budget;
    if (o.box > 0.0) budget.escape_radius = o.box;
    budget.seed = o.seed;
    TransversalSpec section;
    section.eps = o.eps;
    const TraceResult tr = trace_leaf(doc.fol, *doc.x0, *doc.y0, budget, section);
    Json rep;
    rep["command"] = "trace";
    rep["name"] = doc.fol.name;
    rep["stop_reason"] = tr.stop_reason;
    rep["escaped_radius"] = num(tr.escaped_radius);
    rep["points"] = static_cast<int>(tr.points.size());
    Json hits = Json::array();
    for (Cx h : tr.transversal_hits) hits.push_back(num(h));
    rep["transversal_hits"] = hits;
    return rep;
}

std::string run_curvature(const Options& o) {
    const Foliation f = parse_foliation(read_file(o.input)).fol;
    const double half = o.box > 0.0 ? o.box : 2.0;
    const int per_side = o.budget > 0 ? o.budget : 21;
    return curvature_csv(curvature_grid(f, half, per_side, o.jobs));
}

} // namespace

CliResult cli_run(const std::vector<std::string>& args) {
    CliResult res;
    CLI::App app{"foliation toolbox: classification, singularities, monodromy, "
                 "germ dynamics and leaf curvature"};
    app.require_subcommand(1);
    Options o;

    CLI::App* classify = app.add_subcommand("classify", "degrees, infinity leaf, pl property, "
                                                        "invariant lines");
    CLI::App* sing = app.add_subcommand("sing", "singularities at infinity and in the affine "
                                                "chart, residue identity, hyperbolicity triple");
    CLI::App* monodromy = app.add_subcommand(
        "monodromy", "multipliers three ways: analytic, variational, contour integral");
    CLI::App* koenigs =
        app.add_subcommand("koenigs", "linearizing jet plus certified iterative spot checks");
    CLI::App* orbit = app.add_subcommand("orbit", "pseudo-group orbit with certified domains");
    CLI::App* density =
        app.add_subcommand("density", "closure class of an additive subgroup of C");
    CLI::App* trace = app.add_subcommand("trace", "complex-time leaf exploration");
    CLI::App* curvature =
        app.add_subcommand("curvature", "leaf curvature sampled on a grid, CSV (columns "
                                        "re x, im x, re y, im y, kappa)");
    for (CLI::App* cmd :
         {classify, sing, monodromy, koenigs, orbit, density, trace, curvature})
        add_common(cmd, o);
    sing->add_option("--box", o.box, "affine search half-width (default 10)");
    monodromy->add_option("--loop-radius", o.loop_radius,
                          "loop radius in the v coordinate (default: a third of the "
                          "minimal root gap)");
    koenigs->add_option("--jet-order", o.jet_order, "jet truncation order (default 16)")
        ->check(CLI::Range(2, 64));
    orbit->add_option("--word-len", o.word_len, "maximum word length (default 6)")
        ->check(CLI::Range(1, 64));
    orbit->add_option("--budget", o.budget, "maximum orbit points (default 20000)");
    density->add_option("--eps", o.eps, "density net resolution (default 0.02)");
    density->add_option("--budget", o.budget, "maximum torus BFS points (default 200000)");
    trace->add_option("--eps", o.eps, "transversal capture window (default 0.02)");
    trace->add_option("--budget", o.budget, "maximum exploration bursts (default 4000)");
    trace->add_option("--box", o.box, "escape radius (default 100)");
    curvature->add_option("--box", o.box, "grid half-width (default 2)");
    curvature->add_option("--budget", o.budget, "grid points per side (default 21)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        // Help for the deepest subcommand reached, else the app itself.
        const CLI::App* target = &app;
        for (const CLI::App* sub : app.get_subcommands()) target = sub;
        res.out = target->help();
        res.exit_code = 0;
        return res;
    } catch (const CLI::ParseError& e) {
        res.err = std::string("usage error: ") + e.what() + "\n";
        res.exit_code = 2;
        return res;
    }

    try {
        std::string out;
        if (curvature->parsed()) {
            out = run_curvature(o);
        } else {
            Json rep;
            if (classify->parsed()) rep = run_classify(o);
            else if (sing->parsed()) rep = run_sing(o);
            else if (monodromy->parsed()) rep = run_monodromy(o);
            else if (koenigs->parsed()) rep = run_koenigs(o);
            else if (orbit->parsed()) rep = run_orbit(o);
            else if (density->parsed()) rep = run_density(o);
            else rep = run_trace(o);
            rep["seed"] = std::to_string(o.seed);
            out = render(rep, o.format);
        }
        if (!o.output.empty()) {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw ParseError("cannot write output file: " + o.output);
            f << out;
        }
        res.out = std::move(out);
        res.exit_code = 0;
    } catch (const ParseError& e) {
        res.err = std::string("parse error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const PreconditionError& e) {
        res.err = std::string("precondition violated: ") + e.what() + "\n";
        res.exit_code = 3;
    } catch (const NumericError& e) {
        res.err = std::string("numeric failure: ") + e.what() + "\n";
        res.exit_code = 4;
    }
    return res;
}

} // namespace cpfol
