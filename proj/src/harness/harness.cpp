#include "cmheight/harness.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/cm.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

namespace cmh {

std::string to_string(ExtensionPolicy p) {
    switch (p) {
        case ExtensionPolicy::Rational: return "rational";
        case ExtensionPolicy::QuadraticClosure: return "quadratic-closure";
        case ExtensionPolicy::Cyclotomic: return "cyclotomic";
    }
    return "?";
}

ExtensionPolicy parse_extension_policy(const std::string& s) {
    if (s == "rational") return ExtensionPolicy::Rational;
    if (s == "quadratic-closure" || s == "quadratic") return ExtensionPolicy::QuadraticClosure;
    if (s == "cyclotomic") return ExtensionPolicy::Cyclotomic;
    throw std::invalid_argument("unknown extension policy: " + s);
}

void ExperimentConfig::validate() const {
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
    if (num_bound <= 0 || den_bound <= 0) throw std::invalid_argument("search bounds must be positive");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
    if (extension == ExtensionPolicy::Cyclotomic && cyclotomic_n < 3)
        throw std::invalid_argument("cyclotomic policy needs n >= 3");
}

std::vector<std::string> cm_curve_list() {
    std::vector<std::string> out;
    for (const auto& e : cm_table()) out.push_back("j=" + e.j.get_str());
    return out;
}

CurvePtr resolve_curve(const std::string& spec) {
    if (spec.rfind("j=", 0) == 0) return cm_representative_curve(parse_rational(spec.substr(2)));
    return EllipticCurve::parse(spec);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::string& base_dir) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known = {"curves",   "curves_file", "num_bound", "den_bound",
                                                "extension", "cyclotomic_n", "tolerance", "workers",
                                                "csv",       "json"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw std::invalid_argument("unknown config key: " + it.key());

    auto resolve = [&](const std::string& p) {
        if (p.empty() || base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
        return (std::filesystem::path(base_dir) / p).string();
    };

    ExperimentConfig c;
    try {
        if (j.contains("curves")) {
            const auto& cv = j["curves"];
            if (cv.is_string() && cv.get<std::string>() == "cm") {
                c.curves = cm_curve_list();
            } else {
                for (const auto& s : cv) c.curves.push_back(s.get<std::string>());
            }
        }
        if (j.contains("curves_file")) {
            const std::string path = resolve(j["curves_file"].get<std::string>());
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot read " + path);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty() || line[0] == '#') continue;
                c.curves.push_back(line);
            }
        }
        if (j.contains("num_bound")) c.num_bound = j["num_bound"].get<long>();
        if (j.contains("den_bound")) c.den_bound = j["den_bound"].get<long>();
        if (j.contains("extension")) c.extension = parse_extension_policy(j["extension"].get<std::string>());
        if (j.contains("cyclotomic_n")) c.cyclotomic_n = j["cyclotomic_n"].get<int>();
        if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
        if (j.contains("workers")) {
            long w = j["workers"].get<long>();
            if (w <= 0) throw std::invalid_argument("workers must be positive");
            c.workers = static_cast<unsigned>(w);
        }
        if (j.contains("csv")) c.csv_path = resolve(j["csv"].get<std::string>());
        if (j.contains("json")) c.json_path = resolve(j["json"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    return from_json(j, std::filesystem::path(path).parent_path().string());
}

namespace {

// ℚ(√c) ⊆ ℚ(ζ_n) iff the field discriminant divides n (n odd: ζ_n and ζ_2n
// generate the same field, and odd discriminants divide n iff they divide 2n).
bool quadratic_in_cyclotomic(const Integer& c, int n) {
    Integer disc = mod(c, 4) == 1 ? c : Integer(4 * c);
    Integer m = n % 2 == 1 ? Integer(2 * n) : Integer(n);
    return mod(m, abs(disc)) == 0;
}

}  // namespace

std::vector<CurvePoint> sample_points(const CurvePtr& E, const ExperimentConfig& cfg) {
    if (!E->over_rationals()) throw std::invalid_argument("sample_points needs a curve over Q");
    const auto a = E->rational_a();
    const FieldPtr Q = NumberField::rational();
    std::vector<CurvePoint> out;
    std::map<Integer, FieldPtr> fields;
    for (long num = -cfg.num_bound; num <= cfg.num_bound; ++num) {
        for (long den = 1; den <= cfg.den_bound; ++den) {
            // reduced fractions only, so the order is lexicographic in (num, den)
            if (std::gcd(std::labs(num), den) != 1) continue;
            const Rational x(num, den);
            // (2y + a1x + a3)² = δ
            const Rational delta = E->two_torsion_cubic(NFElement(Q, x)).rational_value();
            const Rational shift = a[0] * x + a[2];
            Rational root;
            if (is_square(delta, &root)) {
                Rational y = (root - shift) / 2;
                out.emplace_back(E, NFElement(Q, x), NFElement(Q, y));
                continue;
            }
            if (cfg.extension == ExtensionPolicy::Rational) continue;
            const Integer core = squarefree_core(Integer(delta.get_num() * delta.get_den()));
            if (cfg.extension == ExtensionPolicy::Cyclotomic && !quadratic_in_cyclotomic(core, cfg.cyclotomic_n))
                continue;
            // δ = core·m²
            Rational m2 = delta / core;
            Rational m;
            if (!is_square(m2, &m)) throw std::logic_error("squarefree core mismatch");
            if (m < 0) m = -m;
            auto& K = fields[core];
            if (!K) K = NumberField::quadratic(core);
            NFElement y(K, std::vector<Rational>{-shift / 2, m / 2});
            out.emplace_back(E, NFElement(K, x), y);
        }
    }
    return out;
}

namespace {

struct Job {
    std::size_t curve;
    CurvePoint P;
};

SweepRow certify_row(const CurvePoint& P, const std::string& curve_label, double tol) {
    SweepRow r;
    r.curve = curve_label;
    r.j = P.curve()->rational_j().get_str();
    r.field = P.field()->descriptor();
    r.x = P.x().rational_value().get_str();
    try {
        BoundCertificate c = certify_point(P, tol);
        r.main_bound = c.main.mid().to_string(15);
        if (c.hhat) {
            r.hhat_mid = c.hhat->value.mid().to_string(15);
            r.hhat_rad = c.hhat->value.rad().to_string(15);
        }
        r.verdict = to_string(c.verdict);
        r.certificate = to_json(c);
    } catch (const std::exception& e) {
        r.verdict = "error";
        r.error = e.what();
        r.certificate = {{"curve", P.curve()->serialize()},
                         {"field", r.field},
                         {"point", P.to_string()},
                         {"verdict", "error"},
                         {"error", r.error}};
    }
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<CurvePtr> curves;
    for (const auto& s : cfg.curves) curves.push_back(resolve_curve(s));

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (auto& P : sample_points(curves[i], cfg)) jobs.push_back({i, std::move(P)});

    SweepResult res;
    res.rows.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();)
            res.rows[k] = certify_row(jobs[k].P, curves[jobs[k].curve]->serialize(), cfg.tolerance);
    };
    const unsigned n = std::min<std::size_t>(cfg.workers, std::max<std::size_t>(jobs.size(), 1));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // rows are already in (curve, sample) order, independent of scheduling
    for (const auto& r : res.rows) {
        if (r.verdict == "inconsistent") ++res.inconsistent;
        if (r.verdict == "error") ++res.errors;
    }

    if (!cfg.csv_path.empty()) {
        std::ofstream os(cfg.csv_path);
        if (!os) throw std::runtime_error("cannot write " + cfg.csv_path);
        write_csv(res, os);
    }
    if (!cfg.json_path.empty()) {
        std::ofstream os(cfg.json_path);
        if (!os) throw std::runtime_error("cannot write " + cfg.json_path);
        os << certificates_json(res).dump(2) << '\n';
    }
    return res;
}

void write_csv(const SweepResult& r, std::ostream& os) {
    os << "curve,j,field,x,hhat_mid,hhat_rad,main_bound,verdict\n";
    for (const auto& row : r.rows) {
        os << csv_field(row.curve) << ',' << csv_field(row.j) << ',' << csv_field(row.field) << ','
           << csv_field(row.x) << ',' << row.hhat_mid << ',' << row.hhat_rad << ',' << row.main_bound << ','
           << row.verdict << '\n';
    }
}

nlohmann::json certificates_json(const SweepResult& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : r.rows) arr.push_back(row.certificate);
    return arr;
}

}  // namespace cmh
