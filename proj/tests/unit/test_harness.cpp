#include "doctest.h"

#include "cmheight/arith.hpp"
#include "cmheight/cm.hpp"
#include "cmheight/harness.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace cmh;

namespace {

ExperimentConfig small_config(std::vector<std::string> curves, long N = 3, long B = 2) {
    ExperimentConfig c;
    c.curves = std::move(curves);
    c.num_bound = N;
    c.den_bound = B;
    return c;
}

const CurvePoint* find_x(const std::vector<CurvePoint>& pts, const Rational& x) {
    for (const auto& P : pts)
        if (P.x().rational_value() == x) return &P;
    return nullptr;
}

}  // namespace

TEST_CASE("sample_points examples") {
    auto E = EllipticCurve::parse("0;0;0;-1;0");
    auto pts = sample_points(E, small_config({}));
    auto* P2 = find_x(pts, 2);
    REQUIRE(P2);
    CHECK(P2->field()->descriptor() == NumberField::quadratic(6)->descriptor());
    CHECK(P2->y() * P2->y() == NFElement(P2->field(), Rational(6)));
    auto* P0 = find_x(pts, 0);
    REQUIRE(P0);
    CHECK(P0->field()->kind() == FieldKind::Rational);
    CHECK(P0->y().is_zero());

    auto C = EllipticCurve::parse("0;0;0;-25;0");
    auto cp = sample_points(C, small_config({}, 5, 1));
    auto* Q = find_x(cp, -4);
    REQUIRE(Q);
    CHECK(Q->field()->kind() == FieldKind::Rational);
    CHECK(Q->y().rational_value() == 6);
}

TEST_CASE("sample_points covers the box once, in order") {
    // independent count: reduced fractions a/b with |a| <= N, b <= B
    for (auto spec : {"0;0;0;-1;0", "1;-1;1;-2;0", "0;0;1;0;-7"}) {
        auto E = EllipticCurve::parse(spec);
        for (long N : {1L, 4L, 9L}) {
            for (long B : {1L, 3L, 5L}) {
                std::set<std::pair<long, long>> red;
                std::vector<Rational> order;  // coprime (a, b) in lexicographic order
                for (long a = -N; a <= N; ++a)
                    for (long b = 1; b <= B; ++b) {
                        long g = std::gcd(std::labs(a), b);
                        red.insert({a / g, b / g});
                        if (g == 1) order.push_back(Rational(a, b));
                    }
                auto pts = sample_points(E, small_config({}, N, B));
                REQUIRE(pts.size() == red.size());
                std::set<std::pair<Rational, std::string>> keys;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    const auto& P = pts[i];
                    CHECK(E->contains(P.x(), P.y()));
                    keys.insert({P.x().rational_value(), P.field()->descriptor()});
                    CHECK(P.x().rational_value() == order[i]);
                    if (P.field()->kind() == FieldKind::Quadratic) {
                        CHECK(is_squarefree(P.field()->radicand()));
                        CHECK(!P.y().is_rational());
                    }
                }
                CHECK(keys.size() == pts.size());
            }
        }
    }
}

TEST_CASE("extension policies") {
    auto E = EllipticCurve::parse("0;0;0;-1;0");
    auto cfg = small_config({}, 12, 3);
    auto all = sample_points(E, cfg);
    cfg.extension = ExtensionPolicy::Rational;
    auto rat = sample_points(E, cfg);
    for (const auto& P : rat) CHECK(P.field()->kind() == FieldKind::Rational);
    CHECK(rat.size() < all.size());
    cfg.extension = ExtensionPolicy::Cyclotomic;
    cfg.cyclotomic_n = 24;
    auto cyc = sample_points(E, cfg);
    CHECK(cyc.size() > rat.size());
    for (const auto& P : cyc) {
        if (P.field()->kind() != FieldKind::Quadratic) continue;
        // ℚ(ζ₂₄) has quadratic subfields ℚ(√d), d ∈ {−1, ±2, ±3, ±6}
        long d = P.field()->radicand().get_si();
        CHECK(std::set<long>{-1, 2, -2, 3, -3, 6, -6}.count(d) == 1);
    }
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.tolerance = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.tolerance = 1e-10;
    c.num_bound = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.num_bound = 5;
    CHECK_NOTHROW(c.validate());

    CHECK_THROWS_AS(ExperimentConfig::from_json({{"tolerance", 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"bogus", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"num_bound", "ten"}}), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"extension", "cubic"}}), std::invalid_argument);
    auto ok = ExperimentConfig::from_json({{"curves", "cm"}, {"num_bound", 7}, {"extension", "rational"}});
    CHECK(ok.curves.size() == 13);
    CHECK(ok.num_bound == 7);
    CHECK(ok.extension == ExtensionPolicy::Rational);
}

TEST_CASE("empty sweep writes only the header") {
    auto r = run_sweep(small_config({}));
    std::ostringstream os;
    write_csv(r, os);
    CHECK(os.str() == "curve,j,field,x,hhat_mid,hhat_rad,main_bound,verdict\n");
    CHECK(r.exit_code() == 0);
}

TEST_CASE("sweep rows, verdicts and determinism") {
    auto cfg = small_config({"j=1728", "j=0"}, 4, 2);
    auto r1 = run_sweep(cfg);
    std::size_t expected = 0;
    for (const auto& s : cfg.curves) expected += sample_points(resolve_curve(s), cfg).size();
    CHECK(r1.rows.size() == expected);
    CHECK(r1.exit_code() == 0);
    for (const auto& row : r1.rows) {
        CHECK((row.verdict == "consistent_nontorsion" || row.verdict == "torsion_confirmed"));
        CHECK(row.certificate["verdict"] == row.verdict);
    }

    cfg.workers = 3;
    auto r3 = run_sweep(cfg);
    std::ostringstream a, b;
    write_csv(r1, a);
    write_csv(r3, b);
    CHECK(a.str() == b.str());
    CHECK(certificates_json(r1).dump() == certificates_json(r3).dump());
}

TEST_CASE("sweep writes files from a config file") {
    auto dir = std::filesystem::temp_directory_path() / "cmheight_sweep_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream cf(dir / "curves.txt");
        cf << "# comment\n0;0;0;-1;0\n";
        std::ofstream f(dir / "cfg.json");
        f << R"({"curves_file": "curves.txt", "num_bound": 2, "den_bound": 1, "csv": "out.csv", "json": "out.json"})";
    }
    auto cfg = ExperimentConfig::from_file((dir / "cfg.json").string());
    auto r = run_sweep(cfg);
    std::ifstream csv(dir / "out.csv");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == r.rows.size() + 1);
    CHECK(r.rows.size() == 5);
    std::ifstream js(dir / "out.json");
    auto arr = nlohmann::json::parse(js);
    CHECK(arr.size() == r.rows.size());
    std::filesystem::remove_all(dir);
}
