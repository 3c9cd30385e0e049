#include "cmheight/harness.hpp"

#include "cmheight/cm_galois.hpp"
#include "cmheight/torsion.hpp"

#include <ostream>
#include <set>

#include "CLI11.hpp"

namespace cmh {

namespace {

const std::set<std::string> kSubcommands = {"height", "bound", "certify", "torsion", "galois", "chain", "sweep"};

struct PointArgs {
    std::string curve;
    std::string point;
    std::string field = "Q";
};

void add_point_options(CLI::App* sub, PointArgs& a) {
    sub->add_option("--curve", a.curve, "a1;a2;a3;a4;a6 over Q, or j=<rational> for a CM model")->required();
    sub->add_option("--point", a.point, "x,y with coordinates in the field (or inf)")->required();
    sub->add_option("--field", a.field, "Q, Q(sqrt,D) or Q(zeta,n)");
}

CurvePoint resolve_point(const PointArgs& a) {
    auto E = resolve_curve(a.curve);
    return CurvePoint::parse(E, a.point, NumberField::parse(a.field));
}

std::string fmt(const RealInterval& r, int digits = 15) { return r.to_string(digits); }

Residue parse_residue(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("generator must be a,b: " + s);
    std::size_t used = 0;
    Residue r;
    r.a = std::stol(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("generator must be a,b: " + s);
    const std::string rest = s.substr(comma + 1);
    r.b = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("generator must be a,b: " + s);
    return r;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Canonical heights and explicit lower bounds on CM elliptic curves", "cmheight"};
    app.require_subcommand(1);

    PointArgs hp;
    double h_tol = 1e-10;
    std::string h_method = "doubling";
    bool h_json = false;
    auto* height = app.add_subcommand("height", "canonical height of a point");
    add_point_options(height, hp);
    height->add_option("--tol", h_tol, "radius target")->check(CLI::PositiveNumber);
    height->add_option("--method", h_method, "doubling | local-sum | both")
        ->check(CLI::IsMember({"doubling", "local-sum", "both"}));
    height->add_flag("--json", h_json);

    long b_d = 1;
    std::string b_j = "0";
    bool b_json = false;
    auto* bound = app.add_subcommand("bound", "C1, prime window, intermediate and main bound");
    bound->add_option("--d", b_d, "degree of the base field")->check(CLI::PositiveNumber);
    bound->add_option("--j", b_j, "j-invariant (rational)");
    bound->add_flag("--json", b_json);

    PointArgs cp;
    double c_tol = 1e-10;
    auto* certify = app.add_subcommand("certify", "bound certificate for a point (JSON)");
    add_point_options(certify, cp);
    certify->add_option("--tol", c_tol)->check(CLI::PositiveNumber);

    PointArgs tp;
    auto* torsion = app.add_subcommand("torsion", "reduction-count torsion oracle");
    add_point_options(torsion, tp);

    long g_disc = -4;
    std::vector<long> g_q;
    std::vector<std::string> g_gens;
    long g_d = 1;
    bool g_json = false;
    auto* galois = app.add_subcommand("galois", "unit groups of O/q'O and the homothety gap search");
    galois->add_option("--disc", g_disc, "fundamental discriminant D_K < 0")->required();
    galois->add_option("--qprime", g_q, "prime power q' (repeatable)")->required();
    galois->add_option("--gen", g_gens, "generator a,b of G meaning a + b*omega (repeatable)");
    galois->add_option("--d", g_d, "degree for the gap window")->check(CLI::PositiveNumber);
    galois->add_flag("--json", g_json);

    long ch_d = 1;
    std::string ch_j = "0";
    bool ch_json = false;
    auto* chain = app.add_subcommand("chain", "certified inequality chain down to the main bound");
    chain->add_option("--d", ch_d)->check(CLI::PositiveNumber);
    chain->add_option("--j", ch_j);
    chain->add_flag("--json", ch_json);

    std::string s_config;
    auto* sweep = app.add_subcommand("sweep", "certify every sampled point on the configured curves");
    sweep->add_option("config", s_config, "JSON config file")->required();

    if (argc < 2 || (argv[1][0] != '-' && !kSubcommands.count(argv[1]))) {
        if (argc >= 2) err << "unknown subcommand: " << argv[1] << "\n";
        err << app.help();
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*height) {
            CurvePoint P = resolve_point(hp);
            std::vector<HeightResult> rs;
            if (h_method != "local-sum") rs.push_back(canonical_height_doubling(P, h_tol));
            if (h_method != "doubling") rs.push_back(canonical_height_local_sum(P, h_tol));
            if (h_json) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& r : rs)
                    arr.push_back({{"value", to_json(r.value)},
                                   {"method", to_string(r.method)},
                                   {"precision", r.precision},
                                   {"torsion_detected", r.torsion_detected}});
                out << arr.dump(2) << "\n";
            } else {
                for (const auto& r : rs)
                    out << to_string(r.method) << ": " << fmt(r.value)
                        << (r.torsion_detected ? " (torsion)" : "") << "\n";
            }
            return 0;
        }
        if (*bound) {
            const Rational j = parse_rational(b_j);
            const RealInterval ja = j_abs_interval(j);
            const RealInterval C1 = compute_C1(ja, window_precision(b_d, ja));
            const PrimeWindow w = prime_window(b_d, C1);
            const RealInterval inter = intermediate_bound(w.p, b_d, C1);
            const RealInterval mb = main_bound(b_d, ja);
            if (b_json) {
                out << nlohmann::json{{"d", b_d},
                                      {"j", j.get_str()},
                                      {"C1", to_json(C1)},
                                      {"prime_window",
                                       {{"lo", w.lo.mid().to_string(17)},
                                        {"hi", w.hi.mid().to_string(17)},
                                        {"p", w.p.get_str()},
                                        {"certified", w.certified}}},
                                      {"intermediate_bound", to_json(inter)},
                                      {"main_bound", to_json(mb)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "C1 = " << fmt(C1) << "\n"
                    << "window = [" << w.lo.mid().to_string(8) << ", " << w.hi.mid().to_string(8) << ")\n"
                    << "p = " << w.p.get_str() << (w.certified ? " (proven prime)" : " (probable prime)") << "\n"
                    << "intermediate_bound = " << fmt(inter) << "\n"
                    << "main_bound = " << fmt(mb) << "\n";
            }
            return 0;
        }
        if (*certify) {
            CurvePoint P = resolve_point(cp);
            out << to_json(certify_point(P, c_tol)).dump(2) << "\n";
            return 0;
        }
        if (*torsion) {
            CurvePoint P = resolve_point(tp);
            TorsionResult t = torsion_test(P);
            out << (t.torsion ? "torsion of order " + std::to_string(t.order) : std::string("non-torsion"))
                << "\nbound = " << t.bound.get_str() << "\nprimes =";
            for (const auto& p : t.primes_used) out << " " << p.get_str();
            out << "\n";
            return 0;
        }
        if (*galois) {
            const CMOrder O = CMOrder::maximal(g_disc);
            std::vector<Residue> gens;
            for (const auto& s : g_gens) gens.push_back(parse_residue(s));
            nlohmann::json rows = nlohmann::json::array();
            if (!g_json) out << "D_K\tq'\t|C|\tsplitting\t|G|\t[units:H]\tg1\tg2\tgap\n";
            for (long q : g_q) {
                const ResidueUnitGroup C = residue_unit_group(O, q);
                if (!C.materialized()) throw std::invalid_argument("q' too large to enumerate");
                for (const auto& g : gens)
                    if (!C.is_unit(g)) throw std::invalid_argument("generator is not a unit mod q'");
                const std::vector<Residue> G = gens.empty() ? C.elements : subgroup_closure(C, gens);
                const HomothetySubgroup H = homothety_subgroup(C, G);
                const ScalarPair sp = scalar_gap_search(H, g_d);
                if (g_json) {
                    rows.push_back({{"disc", g_disc},
                                    {"qprime", q},
                                    {"unit_count", C.size},
                                    {"splitting", to_string(C.splitting)},
                                    {"G_size", G.size()},
                                    {"H_index", H.index},
                                    {"g1", sp.g1.get_str()},
                                    {"g2", sp.g2.get_str()},
                                    {"gap", sp.gap().get_str()}});
                } else {
                    out << g_disc << "\t" << q << "\t" << C.size << "\t" << to_string(C.splitting) << "\t"
                        << G.size() << "\t" << H.index << "\t" << sp.g1.get_str() << "\t" << sp.g2.get_str()
                        << "\t" << sp.gap().get_str() << "\n";
                }
            }
            if (g_json) out << rows.dump(2) << "\n";
            return 0;
        }
        if (*chain) {
            const ChainReport rep = inequality_chain_check(ch_d, j_abs_interval(parse_rational(ch_j)));
            if (ch_json) {
                out << nlohmann::json{{"d", rep.d},
                                      {"C1", to_json(rep.C1)},
                                      {"p", rep.p.get_str()},
                                      {"all_pass", rep.all_pass()},
                                      {"links", to_json(rep)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "d = " << rep.d << ", p = " << rep.p.get_str() << ", C1 = " << fmt(rep.C1) << "\n";
                for (const auto& l : rep.links)
                    out << (l.informational ? "info" : l.pass ? "PASS" : "FAIL") << "  " << l.link << ": "
                        << l.lhs.mid().to_string(8) << " " << l.relation << " " << l.rhs.mid().to_string(8) << "\n";
                out << (rep.all_pass() ? "all links hold" : "some links fail") << "\n";
            }
            return 0;
        }
        if (*sweep) {
            const ExperimentConfig cfg = ExperimentConfig::from_file(s_config);
            const SweepResult r = run_sweep(cfg);
            if (cfg.csv_path.empty()) write_csv(r, out);
            err << r.rows.size() << " points, " << r.inconsistent << " inconsistent, " << r.errors << " errors\n";
            for (const auto& row : r.rows)
                if (row.verdict == "error") err << "error at x = " << row.x << ": " << row.error << "\n";
            return r.exit_code();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace cmh
