#pragma once

#include "conway_wales.hpp"
#include "fock.hpp"
#include "frame.hpp"
#include "qseries.hpp"
#include "verify.hpp"

#include <chrono>
#include <functional>
#include <optional>

namespace rudvalis {

// Lazily built objects shared between criteria.
class SuiteContext {
  public:
    std::uint64_t seed = 1; // random walks for class witnesses

    const CayleyAlgebra& algebra() {
        if (!A_) A_ = CayleyAlgebra::build();
        return *A_;
    }
    const CayleyCensus& cayley_census() {
        if (!c_) c_ = census(algebra());
        return *c_;
    }
    const MonomialGenerators& gens() {
        if (!G_) G_ = generators();
        return *G_;
    }
    const OrbitData& orbits() {
        if (!od_) od_ = weight14_orbits(gens());
        return *od_;
    }
    const RhoData& rho() {
        if (!rd_) rd_ = build_rho(orbits());
        return *rd_;
    }
    const ZData& z() {
        if (!zd_) zd_ = build_z(gens());
        return *zd_;
    }
    const PQSeries& character_series() {
        if (!ch_) ch_ = character(qfrac(11, 2));
        return *ch_;
    }

  private:
    std::optional<CayleyAlgebra> A_;
    std::optional<CayleyCensus> c_;
    std::optional<MonomialGenerators> G_;
    std::optional<OrbitData> od_;
    std::optional<RhoData> rd_;
    std::optional<ZData> zd_;
    std::optional<PQSeries> ch_;
};

inline Report report_of(std::string module, std::initializer_list<Report> parts) {
    Report rep;
    rep.module = std::move(module);
    for (const auto& p : parts) rep.merge(p);
    return rep;
}

inline Report criterion_census(SuiteContext& cx) {
    return report_of("census", {verify_census(cx.algebra(), cx.cayley_census())});
}

inline Report criterion_codes(SuiteContext&) { return report_of("codes", {verify_codes()}); }

inline Report criterion_orders(SuiteContext& cx) { return report_of("orders", {verify_group_orders(cx.gens())}); }

inline Report criterion_orbits(SuiteContext& cx) { return report_of("orbits", {verify_orbits(cx.orbits())}); }

inline Report criterion_rho(SuiteContext& cx) {
    Report inv = verify_rho_invariance(cx.rho(), cx.gens(), cx.z());
    // the stated form of the z data, counted over C
    Report stated;
    stated.module = "z as stated";
    GaussRat tr = trace(cx.z().z);
    stated.add("fixed space complex dimension 24, trace 20", cx.z().fixed_dim == 24 && tr == GaussRat(20),
               "complex fixed dimension " + std::to_string(cx.z().fixed_dim) + ", real fixed dimension " +
                   std::to_string(2 * cx.z().fixed_dim) + ", trace " + tr.str());
    return report_of("rho", {inv, stated});
}

inline Report criterion_msets(SuiteContext&) { return report_of("msets", {verify_cw_all()}); }

inline const FrameRow& frame_row(const std::vector<FrameRow>& rows, const std::string& cls) {
    for (const auto& r : rows)
        if (r.cls == cls) return r;
    throw domain_error("unknown class " + cls);
}

inline Report criterion_frame(SuiteContext& cx) {
    Report rep;
    rep.module = "frame";
    rep.merge(verify_frame_table());
    auto rows = load_frame_rows();
    for (const char* cls : {"1A", "2A", "4A"}) {
        const auto& row = frame_row(rows, cls);
        rep.merge(verify_class_witness(row, find_class_in_m(row, cx.gens(), cx.seed), rows));
    }
    return rep;
}

inline Report criterion_character(SuiteContext& cx) {
    return report_of("character", {verify_character(cx.character_series(), load_character_table())});
}

inline Report criterion_sums(SuiteContext& cx) {
    return report_of("sums", {verify_sums(cx.character_series(), load_character_table())});
}

inline Report dual_route_report(const mpq_class& qmax) {
    Report rep;
    rep.module = "dual route";
    for (const auto& cd : load_classes()) {
        auto r = mt_ordinary(cd, qmax);
        rep.add(cd.name + " shapes consistent", r.shapes_consistent);
        rep.add(cd.name + " two-variable at p=1 equals eta quotient", r.agree, std::to_string(r.from_eta.size()) + " terms");
    }
    return rep;
}

inline Report criterion_dual_route(SuiteContext&) { return report_of("mckay-thompson", {dual_route_report(6)}); }

inline Report modular_report(const PQSeries& f, long c, std::complex<double> tau, std::complex<double> z, double tol) {
    Report rep;
    rep.module = "modular";
    auto t2 = t2_phase(f);
    rep.add("T^2 acts by a constant", t2.constant,
            t2.constant ? "phase e^{2 pi i " + t2.phase.get_str() + "}" : t2.witness);
    auto s = s_check_numeric(f, c, tau, z, tol);
    std::ostringstream os;
    os.precision(3);
    os << "ratio " << s.ratio.real() << (s.ratio.imag() < 0 ? "" : "+") << s.ratio.imag() << "i, ||ratio|-1| "
       << s.modulus_error << ", tail " << s.tail_estimate;
    rep.add("S transform has unit modulus", s.pass, os.str());
    return rep;
}

inline constexpr double kSTolerance = 1e-6;

inline Report criterion_modular(SuiteContext&) {
    auto cd = find_class("1A");
    PQSeries f = mt_two_var(cd, 20);
    return report_of("modular", {modular_report(f, central_charge(cd.su), {0, 1}, {0.1, 0}, kSTolerance)});
}

inline Report criterion_fock(SuiteContext&) { return report_of("fock", {check_virasoro_u1(4, 4)}); }

struct Criterion {
    int id;
    std::string title;
    std::function<Report(SuiteContext&)> run;
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "Cayley census", criterion_census},
        {2, "dozens code", criterion_codes},
        {3, "group orders", criterion_orders},
        {4, "weight-14 orbits", criterion_orbits},
        {5, "rho invariance under M and z", criterion_rho},
        {6, "Conway-Wales tables", criterion_msets},
        {7, "Frame shape table", criterion_frame},
        {8, "character table", criterion_character},
        {9, "moonshine sums", criterion_sums},
        {10, "dual-route McKay-Thompson series", criterion_dual_route},
        {11, "modular phases", criterion_modular},
        {12, "Fock space relations", criterion_fock},
    };
    return all;
}

struct CriterionResult {
    int id;
    std::string title;
    Report report;
    double ms = 0;
};

inline CriterionResult run_criterion(const Criterion& c, SuiteContext& cx) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{c.id, c.title, {}, 0};
    try {
        r.report = c.run(cx);
    } catch (const std::exception& e) {
        r.report.module = c.title;
        r.report.add("completed", false, e.what());
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string first_failure(const Report& r) {
    for (const auto& c : r.checks)
        if (!c.pass) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
    return {};
}

} // namespace rudvalis
