#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfs/smalld.hpp"
#include "cfs/stability.hpp"

using cfs::DielectricModel;
using cfs::FilmElasticParams;
using cfs::LayerStack;
using cfs::Method;
using cfs::QuadratureSpec;

namespace {
const FilmElasticParams kP{};  // sigma = 500 MPa, gamma = 1, Y = 76 GPa, nu = 0.3
const QuadratureSpec kQ{};
}  // namespace

TEST_CASE("stability threshold") {
    CHECK(cfs::stability_threshold(kP) == doctest::Approx(1.0820637119113573e13).epsilon(1e-13));
    CHECK(cfs::stability_threshold(kP, true) ==
          doctest::Approx(8.9605695983379501e12).epsilon(1e-13));
    FilmElasticParams zero = kP;
    zero.mismatch_stress = 0.0;
    CHECK(cfs::stability_threshold(zero) == 0.0);
    FilmElasticParams nu0 = kP;
    nu0.poisson = 0.0;
    CHECK(cfs::stability_threshold(nu0, true) == cfs::stability_threshold(nu0, false));
}

TEST_CASE("free-standing films are never flat-stable") {
    const LayerStack s = LayerStack::free_standing(DielectricModel::drude(1e16, 1e15), 6e-9);
    for (Method m : {Method::small_d, Method::full_retarded}) {
        const auto r = cfs::is_stable(s, kP, m, kQ);
        CHECK_FALSE(r.stable);
        CHECK(r.second_derivative < 0.0);
        CHECK(r.threshold == cfs::stability_threshold(kP));
    }
}

TEST_CASE("drude film on a mirror: verdict from the closed forms") {
    const LayerStack s = LayerStack::on_mirror(DielectricModel::drude(1e16, 5e15), 6e-9);
    const auto r = cfs::is_stable(s, kP, Method::small_d, kQ);
    CHECK(r.second_derivative == doctest::Approx(2.8265983958087231e13).epsilon(1e-12));
    CHECK(r.stable);  // 2.83e13 > 1.08e13
    // zero stress: any repulsive force stabilizes
    FilmElasticParams zero = kP;
    zero.mismatch_stress = 0.0;
    CHECK(cfs::is_stable(s, zero, Method::small_d, kQ).stable);
}

TEST_CASE("critical thickness on a mirror matches the closed-form inversion") {
    const LayerStack proto = LayerStack::on_mirror(DielectricModel::plasma(1e16), 1e-9);
    const auto dc = cfs::critical_thickness(proto, kP, Method::small_d, kQ, 1e-9, 100e-9);
    REQUIRE(dc.has_value());
    // (3 sqrt2 hbar omega3 Y^2 gamma / (32 pi sigma^4))^(1/4)
    CHECK(dc->d_c == doctest::Approx(8.0082925955241905e-9).epsilon(1e-5));
    CHECK(dc->bracket_lo <= dc->d_c);
    CHECK(dc->bracket_hi >= dc->d_c);

    // residual of the threshold equation at the root
    const double thr = cfs::stability_threshold(kP);
    const double res =
        cfs::vacuum_second_derivative(proto.with_thickness(dc->d_c), Method::small_d, kQ) - thr;
    CHECK(std::fabs(res) <= 1e-6 * thr);

    // verdict consistency around the root
    CHECK(cfs::is_stable(proto.with_thickness(0.9 * dc->d_c), kP, Method::small_d, kQ).stable);
    CHECK_FALSE(cfs::is_stable(proto.with_thickness(1.1 * dc->d_c), kP, Method::small_d, kQ).stable);
}

TEST_CASE("critical thickness is absent when the threshold is out of reach") {
    FilmElasticParams huge = kP;
    huge.mismatch_stress = 500e9;
    const LayerStack proto = LayerStack::on_mirror(DielectricModel::plasma(1e16), 1e-9);
    CHECK_FALSE(cfs::critical_thickness(proto, huge, Method::small_d, kQ, 1e-9, 100e-9).has_value());
    CHECK_THROWS_AS(cfs::critical_thickness(proto, kP, Method::small_d, kQ, 1e-9, 1e-10),
                    std::invalid_argument);
}

TEST_CASE("boundary roots: small-d plasma boundary is a single crossing") {
    const auto roots =
        cfs::boundary_roots(1e16, 0.0, 0.0, 6e-9, 1e15, 1e19, kP, Method::small_d, kQ);
    REQUIRE(roots.size() == 1);
    // re-verify the boundary point on the threshold equation
    const double thr = cfs::stability_threshold(kP);
    const LayerStack s(DielectricModel::drude(roots[0], 0.0), DielectricModel::vacuum(),
                       DielectricModel::drude(1e16, 0.0), 6e-9);
    CHECK(std::fabs(cfs::vacuum_second_derivative(s, Method::small_d, kQ) - thr) <= 1e-4 * thr);
    // stable above the boundary in the small-d picture
    const LayerStack above(DielectricModel::drude(3.0 * roots[0], 0.0), DielectricModel::vacuum(),
                           DielectricModel::drude(1e16, 0.0), 6e-9);
    CHECK(cfs::is_stable(above, kP, Method::small_d, kQ).stable);
}

TEST_CASE("stability boundary collects per-sample roots") {
    const double samples[] = {2e15, 1e16, 3e16};
    const auto curve =
        cfs::stability_boundary(samples, 1e15, 1e19, 6e-9, 0.0, 0.0, kP, Method::small_d, kQ);
    // a 2e15 film cannot be stabilized even by an ideal substrate at 6 nm
    CHECK(std::find(curve.no_solution_omega3.begin(), curve.no_solution_omega3.end(), 2e15) !=
          curve.no_solution_omega3.end());
    bool found_1e16 = false;
    for (const auto& pt : curve.points)
        if (pt.omega3 == 1e16) {
            found_1e16 = true;
            CHECK(pt.omega1 > 1e15);
            CHECK(pt.branch == 0);
        }
    CHECK(found_1e16);
}

TEST_CASE("raising the shared relaxation frequency never enlarges the small-d stable set") {
    for (double o3 : {5e15, 1e16, 4e16})
        for (double o1 : {2e16, 8e16, 5e17}) {
            bool prev_stable = true;
            for (double wt : {0.0, 1e15, 5e15}) {
                const LayerStack s(DielectricModel::drude(o1, wt), DielectricModel::vacuum(),
                                   DielectricModel::drude(o3, wt), 6e-9);
                const bool stable = cfs::is_stable(s, kP, Method::small_d, kQ).stable;
                if (stable) CHECK(prev_stable);  // once lost, never regained
                prev_stable = stable;
            }
        }
}

TEST_CASE("small-d boundary in omega3 is U-shaped") {
    // near the smallest stabilizable film frequency an almost ideal
    // substrate is needed; the required omega1 then falls, and rises again
    // once omega1 must clear the growing film frequency itself
    auto root_at = [&](double o3) {
        const auto roots =
            cfs::boundary_roots(o3, 0.0, 0.0, 6e-9, 1e15, 1e19, kP, Method::small_d, kQ);
        REQUIRE(roots.size() == 1);
        return roots[0];
    };
    CHECK(root_at(3.3e15) > root_at(4.5e15));
    CHECK(root_at(4.5e15) > root_at(6e15));
    CHECK(root_at(1e16) < root_at(3e16));
    for (double o3 : {3.3e15, 6e15, 3e16}) CHECK(root_at(o3) > o3);  // repulsion needs o1 > o3
}

TEST_CASE("finite substrate bounds the critical-thickness support from above") {
    // films denser than the substrate attract (no d_c at any thickness);
    // below it the d^-4 law always crosses the threshold at small d
    const auto samples = cfs::log_grid(1e15, 1e18, 13);
    const auto curve = cfs::critical_thickness_curve(samples, DielectricModel::plasma(5e16), 0.0,
                                                     kP, Method::small_d, kQ, 1e-9, 100e-9);
    REQUIRE(curve.size() == samples.size());
    CHECK(curve.front().has_value());
    CHECK_FALSE(curve.back().has_value());
    int transitions = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].has_value() != curve[i - 1].has_value()) ++transitions;
    CHECK(transitions == 1);  // one contiguous supported interval ending below omega1
    // the largest d_c sits where the repulsion is strongest, inside the support
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i] && curve[i]->d_c > best) {
            best = curve[i]->d_c;
            best_i = i;
        }
    CHECK(best > 0.0);
    CHECK(best_i > 0);
    CHECK(best_i + 1 < curve.size());
    CHECK(samples[best_i] < 5e16);
}

TEST_CASE("critical thickness curve: mirror substrate scales as omega3^(1/4)") {
    const double samples[] = {1e16, 1.6e17};  // factor 16 in omega3 -> factor 2 in d_c
    const auto curve = cfs::critical_thickness_curve(
        samples, DielectricModel::perfect_reflector(), 0.0, kP, Method::small_d, kQ, 1e-9, 1e-7);
    REQUIRE(curve.size() == 2);
    REQUIRE(curve[0].has_value());
    REQUIRE(curve[1].has_value());
    CHECK(curve[1]->d_c == doctest::Approx(2.0 * curve[0]->d_c).epsilon(1e-4));
}

TEST_CASE("log grid") {
    const auto g = cfs::log_grid(1.0, 100.0, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(g[2] == 100.0);
    CHECK_THROWS_AS(cfs::log_grid(0.0, 1.0, 3), std::invalid_argument);
}
