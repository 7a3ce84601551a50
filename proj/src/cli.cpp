#include "newtonpoly/cli.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/eval_oracle.hpp"
#include "newtonpoly/polytope.hpp"
#include "newtonpoly/reconstruct.hpp"
#include "newtonpoly/slp.hpp"
#include "newtonpoly/sparse_polynomial.hpp"
#include "newtonpoly/witness_oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace newtonpoly {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json rational_json(const Rational& r) {
    if (denominator(r) == 1 && abs(numerator(r)) <= Integer(std::numeric_limits<std::int64_t>::max()))
        return static_cast<std::int64_t>(numerator(r));
    return to_string(r);
}

json rational_array(std::span<const Rational> v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(rational_json(x));
    return j;
}

std::string tuple(std::span<const std::int64_t> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string csv_row(std::span<const std::int64_t> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string rational_tuple(std::span<const Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

enum class Format { Json, Csv, Text };

// Flags shared by every subcommand.
struct Common {
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";
    unsigned jobs = 0;

    Format fmt() const {
        if (format == "csv") return Format::Csv;
        if (format == "text") return Format::Text;
        return Format::Json;
    }
};

struct Input {
    std::string sparse, slp, witness_config;
    std::optional<SparsePolynomial> poly;
    std::optional<Slp> f;

    // Loads --sparse or --slp; n pads the SLP's inputs when positive.
    void load(std::size_t n = 0) {
        if (!sparse.empty()) {
            poly = parse_sparse(read_file(sparse));
            f = sparse_to_slp(*poly);
        } else if (!slp.empty()) {
            f = parse_slp(read_file(slp), n);
        } else {
            throw Error(ErrorKind::InvalidArgument, "one of --sparse or --slp is required");
        }
        if (n > 0 && f->num_inputs() != n) {
            if (f->num_inputs() > n)
                throw Error(ErrorKind::InvalidArgument, "direction has " + std::to_string(n) +
                                                            " entries, polynomial has " +
                                                            std::to_string(f->num_inputs()) + " variables");
            f = f->with_inputs(n);
        }
    }
};

void add_input(CLI::App* cmd, Input& in, bool witness) {
    auto* g = cmd->add_option_group("input");
    g->add_option("--sparse", in.sparse, "sparse polynomial file");
    g->add_option("--slp", in.slp, "straight-line program file");
    if (witness) g->add_option("--witness-config", in.witness_config, "witness line configuration (JSON)");
    g->require_option(1);
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", c.out_path, "write data to this file instead of stdout");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--jobs", c.jobs, "parallel oracle queries (default: available cores)");
}

std::vector<RationalVector> directions(const std::vector<std::string>& ws, const std::string& file) {
    std::vector<RationalVector> out;
    for (const auto& w : ws) out.push_back(parse_direction(w));
    if (!file.empty())
        for (auto& w : parse_direction_file(read_file(file))) out.push_back(std::move(w));
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "no direction given (--w or --directions)");
    for (const auto& w : out)
        if (w.size() != out.front().size())
            throw Error(ErrorKind::InvalidArgument, "directions have different lengths");
    return out;
}

RationalVector single_direction(const std::vector<std::string>& ws) {
    if (ws.size() != 1) throw Error(ErrorKind::InvalidArgument, "exactly one --w is required");
    return parse_direction(ws.front());
}

std::vector<ExponentVector> load_superset(const std::string& path) {
    auto pts = parse_point_list(read_file(path));
    if (pts.empty()) throw Error(ErrorKind::InvalidArgument, "superset " + path + " is empty");
    return pts;
}

// Writes to --out when set, otherwise to the data stream.
void emit(const Common& c, std::ostream& out, const std::string& data) {
    if (c.out_path.empty()) {
        out << data;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + c.out_path);
    f << data;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json certificate_json(const VertexCertificate& c) {
    json j;
    j["beta"] = c.beta;
    j["w"] = c.w;
    j["t_entry"] = c.t_entry;
    j["log_t_entry"] = c.log_t_entry;
    j["diverging"] = c.diverging;
    j["d_w"] = c.d_w;
    j["d_w_fitted"] = c.d_w_fitted;
    j["rate_checks"] = c.rate_checks;
    j["slopes"] = c.slopes;
    j["bound_samples"] = c.bound_samples;
    return j;
}

std::string polytope_text(const LatticePolytope& p) {
    std::ostringstream os;
    os << "dim " << p.dim() << ", " << p.vertices().size() << " vertices, " << p.facets().size() << " facets\n";
    for (const auto& v : p.vertices()) os << "vertex " << tuple(v) << "\n";
    for (const auto& f : p.facets()) {
        os << "facet";
        for (const auto& a : f.normal) os << " " << a;
        os << " <= " << f.offset << "\n";
    }
    for (const auto& e : p.equalities()) {
        os << "equality";
        for (const auto& a : e.normal) os << " " << a;
        os << " = " << e.offset << "\n";
    }
    return os.str();
}

std::string points_csv(const std::vector<LatticePoint>& pts) {
    std::string s;
    for (const auto& p : pts) s += csv_row(p) + "\n";
    return s;
}

// ---- support ----

struct SupportArgs {
    Common c;
    Input in;
    std::vector<std::string> w;
    std::string directions_file;
};

int cmd_support(SupportArgs& a, std::ostream& out, std::ostream&) {
    const auto ws = directions(a.w, a.directions_file);
    a.in.load(ws.front().size());
    json results = json::array();
    std::string csv = "w,h,group_gen\n", text;
    for (const auto& w : ws) {
        const auto est = support_value(*a.in.f, w, a.c.seed);
        json r;
        r["w"] = rational_array(w);
        r["h"] = rational_json(*est.h_value);
        r["group_gen"] = rational_json(est.group_gen);
        json samples = json::array();
        for (const auto& [tau, v] : est.samples) samples.push_back({tau, v});
        r["samples"] = samples;
        results.push_back(r);
        std::string wtxt = rational_tuple(w);
        csv += "\"" + wtxt.substr(1, wtxt.size() - 2) + "\"," + to_string(*est.h_value) + "," +
               to_string(est.group_gen) + "\n";
        text += "h" + wtxt + " = " + to_string(*est.h_value) + "\n";
    }
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump({{"results", results}})); break;
        case Format::Csv: emit(a.c, out, csv); break;
        case Format::Text: emit(a.c, out, text); break;
    }
    return 0;
}

// ---- vertex ----

struct VertexArgs {
    Common c;
    Input in;
    std::string backend = "eval";
    std::vector<std::string> w;
    std::optional<double> t, t_max, delta, lambda;
    std::string superset;
    bool adaptive = false;
    bool full_track = false;
    std::string paths_csv;
};

int vertex_eval(VertexArgs& a, std::ostream& out, std::ostream& err) {
    const RationalVector w = single_direction(a.w);
    a.in.load(w.size());
    json j;
    j["backend"] = "eval";
    j["w"] = rational_array(w);
    ExponentVector beta;
    std::string text;
    if (a.adaptive) {
        auto bound = bounding_polytope(*a.in.f, w.size(), default_bounding_directions(w.size()), a.c.seed);
        const auto ans = adaptive_vertex_query(*a.in.f, bound.lattice_points, w, a.c.seed);
        beta = ans.beta;
        j["mode"] = "adaptive";
        j["h"] = rational_json(*ans.estimate.h_value);
        j["group_gen"] = rational_json(ans.estimate.group_gen);
        j["candidates"] = bound.lattice_points.size();
        text = "h = " + to_string(*ans.estimate.h_value) + "\n";
    } else {
        if (a.superset.empty())
            throw Error(ErrorKind::InvalidArgument, "eval backend needs --superset (with --delta, --lambda) or --adaptive");
        if (!a.delta || !a.lambda)
            throw Error(ErrorKind::InvalidArgument, "--delta and --lambda are required with --superset");
        EvalBounds b{*a.delta, *a.lambda, load_superset(a.superset)};
        b.validate();
        const auto wd = to_double_vector(w);
        const auto gap = min_gap(b.superset, std::span<const Rational>(w));
        const double log_t = a.t ? std::log(*a.t) : std::log(2.0) + threshold_log_t(b, gap);
        const auto ans = vertex_query_log(*a.in.f, b, wd, log_t, a.c.seed);
        beta = ans.beta;
        j["mode"] = "theorem";
        j["ratio"] = ans.ratio;
        j["log_t"] = ans.log_t;
        j["t"] = std::exp(ans.log_t);
        j["d_w"] = ans.d_w;
        j["threshold_t"] = threshold_t(b, gap);
        std::ostringstream os;
        os << std::setprecision(6) << "ratio = " << ans.ratio << "\nt = " << std::exp(ans.log_t) << "\nd_w = " << ans.d_w
           << "\n";
        text = os.str();
    }
    (void)err;
    j["beta"] = beta;
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump(j)); break;
        case Format::Csv: emit(a.c, out, csv_row(beta) + "\n"); break;
        case Format::Text: emit(a.c, out, "beta = " + tuple(beta) + "\n" + text); break;
    }
    return 0;
}

int vertex_witness(VertexArgs& a, std::ostream& out, std::ostream& err) {
    if (a.in.witness_config.empty()) throw Error(ErrorKind::InvalidArgument, "witness backend needs --witness-config");
    const fs::path cfg_path(a.in.witness_config);
    auto cfg = parse_witness_config(read_file(a.in.witness_config), cfg_path.parent_path());
    auto backend = load_backend(cfg);
    const RationalVector w = single_direction(a.w);
    if (w.size() != backend->num_vars())
        throw Error(ErrorKind::InvalidArgument, "direction length does not match the backend");
    const auto line = cfg.line ? make_line(*backend, cfg.line->first, cfg.line->second, cfg.degree)
                               : make_line(*backend, cfg.seed ^ a.c.seed, cfg.degree);
    if (!cfg.C) err << "note: C not set in the witness config, using 10\n";
    const auto consts = line_constants(line, cfg.C.value_or(10.0));
    WitnessQueryConfig q;
    q.t_max = a.t_max.value_or(cfg.t_max);
    q.early_stop = !a.full_track;
    q.seed = a.c.seed;
    if (!a.superset.empty()) q.d_w = min_gap(load_superset(a.superset), std::span<const Rational>(w)).d_w;
    const auto ans = witness_vertex_query(*backend, line, consts, w, q);
    if (!a.paths_csv.empty()) {
        std::ofstream f(a.paths_csv);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + a.paths_csv);
        write_path_csv(f, ans.paths);
    }
    json j;
    j["backend"] = "witness";
    j["w"] = rational_array(w);
    j["w_certified"] = rational_array(ans.w);
    j["attempts"] = ans.attempts;
    j["degree"] = line.degree;
    j["beta"] = ans.beta;
    j["certificate"] = certificate_json(ans.certificate);
    std::ostringstream text;
    text << "beta = " << tuple(ans.beta) << "\n"
         << std::setprecision(6) << "t_entry = " << ans.certificate.t_entry << "\nd_w = " << ans.certificate.d_w
         << (ans.certificate.d_w_fitted ? " (fitted)" : "") << "\ndiverging = " << ans.certificate.diverging << "\n";
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump(j)); break;
        case Format::Csv: {
            std::ostringstream os;
            write_path_csv(os, ans.paths);
            emit(a.c, out, os.str());
            break;
        }
        case Format::Text: emit(a.c, out, text.str()); break;
    }
    return 0;
}

int cmd_vertex(VertexArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.in.witness_config.empty()) a.backend = "witness";
    return a.backend == "witness" ? vertex_witness(a, out, err) : vertex_eval(a, out, err);
}

// ---- reconstruct ----

struct ReconstructArgs {
    Common c;
    Input in;
    std::string backend = "eval";
    std::optional<double> t_max, delta, lambda;
    std::string superset;
    bool adaptive = false;
    std::size_t attempts = 4;
};

int cmd_reconstruct(ReconstructArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.in.witness_config.empty()) a.backend = "witness";
    std::unique_ptr<OracleAdapter> oracle;
    if (a.backend == "witness") {
        if (a.in.witness_config.empty())
            throw Error(ErrorKind::InvalidArgument, "witness backend needs --witness-config");
        const fs::path cfg_path(a.in.witness_config);
        auto cfg = parse_witness_config(read_file(a.in.witness_config), cfg_path.parent_path());
        std::shared_ptr<const LineBackend> backend = load_backend(cfg);
        const auto line = cfg.line ? make_line(*backend, cfg.line->first, cfg.line->second, cfg.degree)
                                   : make_line(*backend, cfg.seed ^ a.c.seed, cfg.degree);
        if (!cfg.C) err << "note: C not set in the witness config, using 10\n";
        WitnessQueryConfig q;
        q.t_max = a.t_max.value_or(cfg.t_max);
        q.seed = a.c.seed;
        oracle = std::make_unique<WitnessOracle>(backend, line, line_constants(line, cfg.C.value_or(10.0)), q);
    } else {
        a.in.load();
        const std::size_t n = a.in.f->num_inputs();
        if (a.adaptive) {
            oracle = std::make_unique<AdaptiveEvalOracle>(*a.in.f, n, a.c.seed);
        } else {
            if (a.superset.empty())
                throw Error(ErrorKind::InvalidArgument, "eval backend needs --superset (with --delta, --lambda) or --adaptive");
            if (!a.delta || !a.lambda)
                throw Error(ErrorKind::InvalidArgument, "--delta and --lambda are required with --superset");
            EvalBounds b{*a.delta, *a.lambda, load_superset(a.superset)};
            b.validate();
            if (b.superset.front().size() != n)
                throw Error(ErrorKind::InvalidArgument, "superset points do not match the number of variables");
            oracle = std::make_unique<EvalOracle>(*a.in.f, std::move(b), a.c.seed);
        }
    }
    ReconstructConfig rc;
    rc.seed = a.c.seed;
    rc.attempts = a.attempts;
    rc.jobs = a.c.jobs ? a.c.jobs : std::max(1u, std::thread::hardware_concurrency());
    const auto r = reconstruct(*oracle, rc);
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump(to_json(r))); break;
        case Format::Csv: emit(a.c, out, points_csv(r.polytope.vertices())); break;
        case Format::Text: {
            std::ostringstream os;
            os << polytope_text(r.polytope) << "queries " << r.queries << ", indeterminate " << r.indeterminate
               << ", confirmed facets " << r.confirmed_facets << ", complete " << (r.complete ? "yes" : "no") << "\n";
            emit(a.c, out, os.str());
            break;
        }
    }
    if (!r.complete) {
        err << "reconstruction incomplete: " << r.unconfirmed.size() << " facet normal(s) unconfirmed\n";
        return 3;
    }
    return 0;
}

// ---- polytope utilities ----

struct HullArgs {
    Common c;
    std::string points;
};

LatticePolytope load_polytope(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
    return polytope_from_json(j);
}

int cmd_hull(HullArgs& a, std::ostream& out, std::ostream&) {
    const auto pts = parse_point_list(read_file(a.points));
    const auto p = convex_hull(pts);
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump(to_json(p))); break;
        case Format::Csv: emit(a.c, out, points_csv(p.vertices())); break;
        case Format::Text: emit(a.c, out, polytope_text(p)); break;
    }
    return 0;
}

struct LatticeArgs {
    Common c;
    std::string polytope;
};

int cmd_lattice(LatticeArgs& a, std::ostream& out, std::ostream&) {
    const auto pts = lattice_points(load_polytope(a.polytope));
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump({{"count", pts.size()}, {"points", pts}})); break;
        case Format::Csv: emit(a.c, out, points_csv(pts)); break;
        case Format::Text: emit(a.c, out, std::to_string(pts.size()) + " lattice points\n" + points_csv(pts)); break;
    }
    return 0;
}

struct IsomArgs {
    Common c;
    std::string p, q;
};

int cmd_isom(IsomArgs& a, std::ostream& out, std::ostream&) {
    const auto w = affinely_isomorphic(load_polytope(a.p), load_polytope(a.q));
    json j;
    j["isomorphic"] = w.has_value();
    j["witness"] = w ? to_json(*w) : json(nullptr);
    switch (a.c.fmt()) {
        case Format::Json: emit(a.c, out, dump(j)); break;
        case Format::Csv: emit(a.c, out, std::string("isomorphic\n") + (w ? "true" : "false") + "\n"); break;
        case Format::Text: emit(a.c, out, w ? "isomorphic\n" + j["witness"].dump() + "\n" : "not isomorphic\n"); break;
    }
    return 0;
}

}  // namespace

std::vector<LatticePoint> parse_point_list(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::Parse, std::string("point list: ") + e.what());
        }
        if (j.is_object()) {
            if (!j.contains("vertices")) throw Error(ErrorKind::Parse, "point list object needs \"vertices\"");
            j = j["vertices"];
        }
        if (!j.is_array()) throw Error(ErrorKind::Parse, "point list must be an array");
        std::vector<LatticePoint> pts;
        for (const auto& row : j) {
            if (!row.is_array()) throw Error(ErrorKind::Parse, "point must be an array");
            LatticePoint p;
            for (const auto& x : row) {
                if (!x.is_number_integer()) throw Error(ErrorKind::Parse, "point entries must be integers");
                p.push_back(x.get<std::int64_t>());
            }
            pts.push_back(std::move(p));
        }
        return pts;
    }
    std::vector<LatticePoint> pts;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        LatticePoint p;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw Error(ErrorKind::Parse, "bad integer '" + tok + "' in point list");
            p.push_back(v);
        }
        if (!p.empty()) pts.push_back(std::move(p));
    }
    return pts;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Newton polytopes from evaluation or witness-set oracles", "newtonpoly"};
    app.require_subcommand(1);

    SupportArgs sa;
    auto* support = app.add_subcommand("support", "estimate the support function h(w)");
    add_input(support, sa.in, false);
    support->add_option("--w", sa.w, "direction, comma separated (repeatable)");
    support->add_option("--directions", sa.directions_file, "file with one direction per line");
    add_common(support, sa.c);

    VertexArgs va;
    auto* vertex = app.add_subcommand("vertex", "vertex of the Newton polytope exposed by w");
    add_input(vertex, va.in, true);
    vertex->add_option("--backend", va.backend)->check(CLI::IsMember({"eval", "witness"}))->capture_default_str();
    vertex->add_option("--w", va.w, "direction, comma separated")->required();
    vertex->add_option("--t", va.t, "evaluation parameter (default 2 * threshold)");
    vertex->add_option("--t-max", va.t_max, "largest t tracked (witness)");
    vertex->add_option("--delta", va.delta, "bound on log|c|");
    vertex->add_option("--lambda", va.lambda, "bound on log of coefficient ratios");
    auto* vs = vertex->add_option("--superset", va.superset, "exponent superset (point list)");
    vertex->add_flag("--adaptive", va.adaptive, "bounding polytope from support estimates")->excludes(vs);
    vertex->add_flag("--full-track", va.full_track, "track to t-max without early stopping (witness)");
    vertex->add_option("--paths", va.paths_csv, "write tracked paths as CSV (witness)");
    add_common(vertex, va.c);

    ReconstructArgs ra;
    auto* rec = app.add_subcommand("reconstruct", "assemble the Newton polytope from vertex queries");
    add_input(rec, ra.in, true);
    rec->add_option("--backend", ra.backend)->check(CLI::IsMember({"eval", "witness"}))->capture_default_str();
    rec->add_option("--t-max", ra.t_max, "largest t tracked (witness)");
    rec->add_option("--delta", ra.delta, "bound on log|c|");
    rec->add_option("--lambda", ra.lambda, "bound on log of coefficient ratios");
    auto* rs = rec->add_option("--superset", ra.superset, "exponent superset (point list)");
    rec->add_flag("--adaptive", ra.adaptive, "bounding polytope from support estimates")->excludes(rs);
    rec->add_option("--attempts", ra.attempts, "perturbations per facet normal")->capture_default_str();
    add_common(rec, ra.c);

    HullArgs ha;
    auto* hull = app.add_subcommand("hull", "convex hull of a point list");
    hull->add_option("--points", ha.points, "point list (JSON or rows)")->required();
    add_common(hull, ha.c);

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "lattice points of a polytope");
    lattice->add_option("--polytope", la.polytope, "polytope JSON")->required();
    add_common(lattice, la.c);

    IsomArgs ia;
    auto* isom = app.add_subcommand("isom", "lattice-affine isomorphism test");
    isom->add_option("--p", ia.p, "polytope JSON")->required();
    isom->add_option("--q", ia.q, "polytope JSON")->required();
    add_common(isom, ia.c);

    std::vector<std::string> argv_store{"newtonpoly"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*support) return cmd_support(sa, out, err);
        if (*vertex) return cmd_vertex(va, out, err);
        if (*rec) return cmd_reconstruct(ra, out, err);
        if (*hull) return cmd_hull(ha, out, err);
        if (*lattice) return cmd_lattice(la, out, err);
        if (*isom) return cmd_isom(ia, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

}  // namespace newtonpoly
