#include "rudvalis/run_report.hpp"
#include "rudvalis/suite.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>
#include <regex>

using namespace rudvalis;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string qmax;
    std::string cls = "1A";
    std::string format = "json";
    std::string data;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    bool two_var = false;
    std::string tau = "i", z = "0.1";
    std::string element;
    int weight = 14;
    int fock_n = 4, fock_dmax = 4;
    bool vpm = false;
};

mpq_class parse_rational(const std::string& s) {
    static const std::regex re(R"(\s*-?\d+(/\d+)?\s*)");
    if (!std::regex_match(s, re)) throw usage_error("not a rational number: " + s);
    mpq_class q(s);
    if (q.get_den() == 0) throw usage_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

// a, bi, a+bi, a-bi, i, -i
std::complex<double> parse_complex(const std::string& s) {
    static const std::regex re(R"(\s*([-+]?\d*\.?\d+(?:[eE][-+]?\d+)?)?\s*(?:([-+])\s*(\d*\.?\d*(?:[eE][-+]?\d+)?)\s*i|([-+]?)(\d*\.?\d*(?:[eE][-+]?\d+)?)i)?\s*)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, re)) throw usage_error("not a complex number: " + s);
    double re_part = m[1].matched ? std::stod(m[1]) : 0, im = 0;
    auto coeff = [](const std::string& t) { return t.empty() ? 1.0 : std::stod(t); };
    if (m[2].matched) {
        if (!m[1].matched) throw usage_error("not a complex number: " + s);
        im = (m[2] == "-" ? -1 : 1) * coeff(m[3]);
    } else if (m[5].matched || m[4].matched) {
        if (m[1].matched) throw usage_error("not a complex number: " + s);
        im = (m[4] == "-" ? -1 : 1) * coeff(m[5]);
    } else if (!m[1].matched) {
        throw usage_error("not a complex number: " + s);
    }
    return {re_part, im};
}

template <class F> double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void add_timed(RunReport& rr, const std::function<Report()>& f) {
    Report r;
    double ms = timed([&] { r = f(); });
    rr.add(r, ms);
}

nlohmann::json series_payload(const PQSeries& s, const mpq_class& qmax, const std::string& cls) {
    return {{"class", cls}, {"qmax", qmax.get_str()}, {"terms", series_to_json(s)}};
}

int emit(const RunReport& rr, const Options& o, const PQSeries* series) {
    if (o.format == "csv") {
        std::cout << (series ? series_to_csv(*series) : checks_to_csv(rr));
        if (series && !rr.pass()) std::cerr << checks_to_csv(rr);
    } else {
        std::cout << rr.to_json().dump(2) << "\n";
    }
    if (!rr.pass())
        for (const auto& c : rr.checks)
            if (!c.pass) std::cerr << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    return rr.exit_code();
}

int cmd_census(RunReport& rr, const Options& o) {
    SuiteContext cx;
    add_timed(rr, [&] { return verify_cayley_algebra(cx.algebra()); });
    add_timed(rr, [&] { return verify_census(cx.algebra(), cx.cayley_census()); });
    add_timed(rr, [&] { return verify_grid(cx.algebra(), cx.cayley_census()); });
    const auto& c = cx.cayley_census();
    rr.result = {{"involutions", c.involutions.size()}, {"cube_roots", c.cube_roots.size()},
                 {"cube_root_pairs", c.pairs.size()},   {"lines", c.lines.size()},
                 {"rings", c.rings.size()},             {"couples", couples(c).size()}};
    return emit(rr, o, nullptr);
}

int cmd_codes(RunReport& rr, const Options& o) {
    add_timed(rr, [] { return verify_codes(); });
    Code D = dozens_code(), Dp = D.dual();
    std::map<std::string, long> dist;
    std::vector<long> counts(kDelta + 1);
    Dp.for_each_word([&](Word w) { ++counts[weight(w)]; });
    for (int k = 0; k <= kDelta; ++k)
        if (counts[k]) dist[std::to_string(k)] = counts[k];
    nlohmann::json basis = nlohmann::json::array();
    for (Word b : D.basis()) basis.push_back(word_str(b));
    rr.result = {{"dim", D.dim()}, {"dual_dim", Dp.dim()}, {"basis", basis}, {"dual_weight_distribution", dist}};
    return emit(rr, o, nullptr);
}

int cmd_orbits(RunReport& rr, const Options& o) {
    if (o.weight != 14) throw usage_error("orbits enumerate supports --weight 14 only");
    SuiteContext cx;
    add_timed(rr, [&] { return verify_orbits(cx.orbits()); });
    add_timed(rr, [&] { return verify_relevance_by_stabilizer(cx.orbits(), cx.gens()); });
    nlohmann::json orbs = nlohmann::json::array();
    for (const auto& orb : cx.orbits().orbits)
        orbs.push_back({{"rep", word_str(orb.rep)}, {"size", orb.members.size()}, {"relevant", orb.relevant}});
    rr.result = {{"words", cx.orbits().words.size()}, {"orbits", orbs}};
    return emit(rr, o, nullptr);
}

int cmd_msets(RunReport& rr, const Options& o) {
    add_timed(rr, [] { return verify_cw_all(); });
    return emit(rr, o, nullptr);
}

int cmd_rho(RunReport& rr, const Options& o, bool verify) {
    SuiteContext cx;
    if (!verify) {
        add_timed(rr, [&] {
            Report r;
            r.module = "rho build";
            const auto& rd = cx.rho();
            r.add("34 table rows", rd.rows.size() == 34, std::to_string(rd.rows.size()));
            r.add("68 orbits used", rd.orbits_used.size() == 68, std::to_string(rd.orbits_used.size()));
            r.add("homogeneous of degree 14", rd.rho.homogeneous_degree() == 14);
            return r;
        });
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : cx.rho().rows)
            rows.push_back({{"rep", word_str(r.rep)}, {"r", r.r.str()}, {"r_comp", r.r_comp.str()},
                            {"orbit_size", cx.orbits().orbits[r.orbit].members.size()},
                            {"comp_orbit_size", cx.orbits().orbits[r.comp_orbit].members.size()}});
        rr.result = {{"terms", cx.rho().rho.size()}, {"C", cx.rho().C.get_str()}, {"rows", rows}};
    } else {
        add_timed(rr, [&] { return verify_rho_invariance(cx.rho(), cx.gens(), cx.z()); });
        rr.result = {{"terms", cx.rho().rho.size()}, {"z_fixed_complex_dim", cx.z().fixed_dim},
                     {"z_trace", trace(cx.z().z).str()}};
    }
    return emit(rr, o, nullptr);
}

int cmd_frame_verify(RunReport& rr, const Options& o) {
    SuiteContext cx;
    cx.seed = o.seed;
    add_timed(rr, [&] { return criterion_frame(cx); });
    return emit(rr, o, nullptr);
}

int cmd_frame_extract(RunReport& rr, const Options& o) {
    auto G = generators();
    MonoMat g;
    try {
        g = element_from_word(G, o.element);
    } catch (const domain_error& e) {
        throw usage_error(e.what());
    }
    auto rows = load_frame_rows();
    Report rep;
    rep.module = "frame extract";
    double ms = timed([&] {
        GPoly P = det_id_minus_gx(g);
        long n = g.order();
        FrameShape f = frame_from_traces(u_traces(g, n), n, 2 * kDelta);
        std::vector<std::string> hits;
        for (const auto& r : rows) {
            if (P == weak_shape_expand(r.su28)) hits.push_back(r.cls);
            if (P == weak_shape_expand(iota(r.su28))) hits.push_back(r.cls + "'");
        }
        bool so_ok = !hits.empty();
        for (const auto& h : hits) {
            const auto& r = frame_row(rows, h.back() == '\'' ? h.substr(0, h.size() - 1) : h);
            const auto& so = h.back() == '\'' ? iota(r.so56) : r.so56;
            so_ok = so_ok && frame_expand(f) == weak_shape_expand(so);
        }
        rep.add("det(1 - g x) matches a table row", !hits.empty());
        rep.add("frame_from_traces matches the SO column", so_ok, f.str());
        nlohmann::json h = hits;
        rr.result = {{"element", o.element}, {"order", n}, {"so56_frame_shape", f.str()}, {"classes", h}};
    });
    rr.add(rep, ms);
    return emit(rr, o, nullptr);
}

int cmd_series_character(RunReport& rr, const Options& o) {
    mpq_class qmax = o.qmax.empty() ? mpq_class(6) : parse_rational(o.qmax);
    PQSeries ch;
    rr.timing_ms["series"] = timed([&] { ch = character(qmax); });
    auto t = load_character_table();
    mpq_class last = 0;
    for (const auto& [deg, e] : t.rows) last = std::max(last, deg);
    if (qmax >= last) add_timed(rr, [&] { return verify_character(ch, t); });
    rr.result = series_payload(ch, qmax, "1A");
    return emit(rr, o, &ch);
}

int cmd_series_mt(RunReport& rr, const Options& o) {
    mpq_class qmax = o.qmax.empty() ? mpq_class(6) : parse_rational(o.qmax);
    ClassData cd;
    try {
        cd = find_class(o.cls);
    } catch (const domain_error& e) {
        throw usage_error(e.what());
    }
    PQSeries s;
    if (o.two_var) {
        rr.timing_ms["series"] = timed([&] { s = mt_two_var(cd, qmax); });
    } else {
        add_timed(rr, [&] {
            auto routes = mt_ordinary(cd, qmax);
            s = routes.from_two_var;
            Report r;
            r.module = "mt " + cd.name;
            r.add("shapes consistent", routes.shapes_consistent);
            r.add("two-variable at p=1 equals eta quotient", routes.agree);
            return r;
        });
    }
    rr.result = series_payload(s, qmax, cd.name);
    return emit(rr, o, &s);
}

int cmd_series_scheck(RunReport& rr, const Options& o) {
    mpq_class qmax = o.qmax.empty() ? mpq_class(20) : parse_rational(o.qmax);
    auto tau = parse_complex(o.tau), z = parse_complex(o.z);
    if (tau.imag() < 1) throw usage_error("--tau needs imaginary part at least 1");
    ClassData cd;
    try {
        cd = find_class(o.cls);
    } catch (const domain_error& e) {
        throw usage_error(e.what());
    }
    add_timed(rr, [&] { return modular_report(mt_two_var(cd, qmax), central_charge(cd.su), tau, z, kSTolerance); });
    return emit(rr, o, nullptr);
}

int cmd_fock(RunReport& rr, const Options& o) {
    if (o.vpm) throw usage_error("--vpm is not supported");
    if (o.fock_n < 1 || o.fock_n > 6 || o.fock_dmax < 1 || o.fock_dmax > 6)
        throw usage_error("--n and --dmax must lie in 1..6");
    add_timed(rr, [&] { return check_virasoro_u1(o.fock_n, o.fock_dmax); });
    return emit(rr, o, nullptr);
}

int cmd_verify_all(RunReport& rr, const Options& o) {
    SuiteContext cx;
    cx.seed = o.seed;
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& c : criteria()) {
        auto r = run_criterion(c, cx);
        r.report.module = "[" + std::to_string(c.id) + "] " + c.title;
        rr.add(r.report, r.ms);
        summary.push_back({{"criterion", c.id}, {"title", c.title}, {"pass", r.report.pass()}});
    }
    rr.result = {{"criteria", summary}};
    return emit(rr, o, nullptr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the Rudvalis moonshine data"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--data", o.data, "resource directory");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", o.threads, "worker threads (computations run on one thread)")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for sampling checks");

    auto* census = app.add_subcommand("census", "Cayley algebra census");
    auto* census_cayley = census->add_subcommand("cayley", "census of the mod-2 Cayley algebra");
    census->require_subcommand(1);

    auto* codes = app.add_subcommand("codes", "dozens code");
    auto* codes_info = codes->add_subcommand("info", "dimensions and weight distribution");
    codes->require_subcommand(1);

    auto* orbits = app.add_subcommand("orbits", "weight-14 orbits");
    auto* orbits_enum = orbits->add_subcommand("enumerate", "enumerate signed orbits");
    orbits_enum->add_option("--weight", o.weight, "word weight");
    orbits->require_subcommand(1);

    auto* msets = app.add_subcommand("msets", "Conway-Wales vectors");
    auto* msets_verify = msets->add_subcommand("verify", "check the tabulated vectors");
    msets->require_subcommand(1);

    auto* rho = app.add_subcommand("rho", "the invariant spinor");
    auto* rho_build = rho->add_subcommand("build", "assemble rho from the table");
    auto* rho_verify = rho->add_subcommand("verify", "invariance under M and z");
    rho->require_subcommand(1);

    auto* frame = app.add_subcommand("frame", "Frame shapes");
    auto* frame_verify = frame->add_subcommand("verify", "check the table and sampled classes");
    auto* frame_extract = frame->add_subcommand("extract", "Frame shape of a word in the generators");
    frame_extract->add_option("--element", o.element, "word such as Q*m*e0")->required();
    frame->require_subcommand(1);

    auto* series = app.add_subcommand("series", "q-series");
    auto* series_char = series->add_subcommand("character", "two-variable character");
    auto* series_mt = series->add_subcommand("mt", "McKay-Thompson series");
    auto* series_s = series->add_subcommand("scheck", "T^2 and S checks");
    for (auto* s : {series_char, series_mt, series_s}) s->add_option("--qmax", o.qmax, "q-degree above the vacuum");
    for (auto* s : {series_mt, series_s}) s->add_option("--class", o.cls, "class name");
    series_mt->add_flag("--two-var", o.two_var, "keep the p grading");
    series_s->add_option("--tau", o.tau, "point in the upper half plane");
    series_s->add_option("--z", o.z, "elliptic variable");
    series->require_subcommand(1);

    auto* fock = app.add_subcommand("fock", "free fermion checks");
    auto* fock_check = fock->add_subcommand("check", "Virasoro and U(1) relations");
    fock_check->add_option("--n", o.fock_n, "number of fermion pairs");
    fock_check->add_option("--dmax", o.fock_dmax, "degree cap");
    fock_check->add_flag("--vpm", o.vpm, "not supported");
    fock->require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "acceptance suite");
    auto* verify_all = verify->add_subcommand("all", "every criterion");
    verify->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!o.data.empty()) set_data_dir(o.data);
        RunReport rr;
        rr.data_version = data_version();
        auto name = [](CLI::App* a, CLI::App* b) { return a->get_name() + " " + b->get_name(); };
        if (*census_cayley) return rr.command = name(census, census_cayley), cmd_census(rr, o);
        if (*codes_info) return rr.command = name(codes, codes_info), cmd_codes(rr, o);
        if (*orbits_enum) return rr.command = name(orbits, orbits_enum), cmd_orbits(rr, o);
        if (*msets_verify) return rr.command = name(msets, msets_verify), cmd_msets(rr, o);
        if (*rho_build) return rr.command = name(rho, rho_build), cmd_rho(rr, o, false);
        if (*rho_verify) return rr.command = name(rho, rho_verify), cmd_rho(rr, o, true);
        if (*frame_verify) return rr.command = name(frame, frame_verify), cmd_frame_verify(rr, o);
        if (*frame_extract) return rr.command = name(frame, frame_extract), cmd_frame_extract(rr, o);
        if (*series_char) return rr.command = name(series, series_char), cmd_series_character(rr, o);
        if (*series_mt) return rr.command = name(series, series_mt), cmd_series_mt(rr, o);
        if (*series_s) return rr.command = name(series, series_s), cmd_series_scheck(rr, o);
        if (*fock_check) return rr.command = name(fock, fock_check), cmd_fock(rr, o);
        if (*verify_all) return rr.command = name(verify, verify_all), cmd_verify_all(rr, o);
        std::cerr << app.help();
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
