#include "cmheight/cm_galois.hpp"
#include "cmheight/harness.hpp"
#include "cmheight/torsion.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cmh;

namespace {

// results cross the boundary as JSON text; the package decodes them
CurvePoint make_point(const std::string& curve, const std::string& point, const std::string& field) {
    return CurvePoint::parse(resolve_curve(curve), point, NumberField::parse(field));
}

std::string height_json(const std::string& curve, const std::string& point, const std::string& field, double tol,
                        const std::string& method) {
    CurvePoint P = make_point(curve, point, field);
    HeightResult r;
    if (method == "doubling") {
        r = canonical_height_doubling(P, tol);
    } else if (method == "local-sum") {
        r = canonical_height_local_sum(P, tol);
    } else {
        throw std::invalid_argument("method must be doubling or local-sum");
    }
    return nlohmann::json{{"value", to_json(r.value)},
                          {"lower", r.value.lower_double()},
                          {"upper", r.value.upper_double()},
                          {"method", to_string(r.method)},
                          {"torsion_detected", r.torsion_detected}}
        .dump();
}

std::string bound_json(long d, const std::string& j) {
    const RealInterval ja = j_abs_interval(parse_rational(j));
    const RealInterval C1 = compute_C1(ja, window_precision(d, ja));
    const PrimeWindow w = prime_window(d, C1);
    return nlohmann::json{{"C1", C1.mid_double()},
                          {"window", {w.lo.mid_double(), w.hi.mid_double()}},
                          {"p", w.p.get_str()},
                          {"intermediate_bound", intermediate_bound(w.p, d, C1).mid_double()},
                          {"main_bound", main_bound(d, ja).mid_double()}}
        .dump();
}

std::string certify_json(const std::string& curve, const std::string& point, const std::string& field, double tol) {
    return to_json(certify_point(make_point(curve, point, field), tol)).dump();
}

std::string torsion_json(const std::string& curve, const std::string& point, const std::string& field) {
    TorsionResult t = torsion_test(make_point(curve, point, field));
    return nlohmann::json{{"torsion", t.torsion}, {"order", t.order}, {"bound", t.bound.get_str()}}.dump();
}

std::string galois_json(long disc, long qprime, long d) {
    const ResidueUnitGroup C = residue_unit_group(CMOrder::maximal(disc), qprime);
    const HomothetySubgroup H = homothety_subgroup(C, C.elements);
    const ScalarPair sp = scalar_gap_search(H, d);
    return nlohmann::json{{"unit_count", C.size},
                          {"splitting", to_string(C.splitting)},
                          {"g1", sp.g1.get_si()},
                          {"g2", sp.g2.get_si()}}
        .dump();
}

std::string chain_json(long d, const std::string& j) {
    ChainReport r = inequality_chain_check(d, j_abs_interval(parse_rational(j)));
    return nlohmann::json{{"all_pass", r.all_pass()}, {"p", r.p.get_str()}, {"links", to_json(r)}}.dump();
}

std::string sample_json(const std::string& curve, const std::string& config) {
    auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config));
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& P : sample_points(resolve_curve(curve), cfg))
        arr.push_back({{"field", P.field()->descriptor()}, {"point", P.to_string()}});
    return arr.dump();
}

std::string sweep_json(const std::string& config) {
    auto r = run_sweep(ExperimentConfig::from_json(nlohmann::json::parse(config)));
    std::ostringstream csv;
    write_csv(r, csv);
    return nlohmann::json{{"csv", csv.str()},
                          {"certificates", certificates_json(r)},
                          {"inconsistent", r.inconsistent},
                          {"errors", r.errors},
                          {"exit_code", r.exit_code()}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_cmheight, m) {
    py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_RuntimeError);
    m.def("height_json", &height_json, py::arg("curve"), py::arg("point"), py::arg("field") = "Q",
          py::arg("tol") = 1e-10, py::arg("method") = "doubling");
    m.def("bound_json", &bound_json, py::arg("d"), py::arg("j"));
    m.def("certify_json", &certify_json, py::arg("curve"), py::arg("point"), py::arg("field") = "Q",
          py::arg("tol") = 1e-10);
    m.def("torsion_json", &torsion_json, py::arg("curve"), py::arg("point"), py::arg("field") = "Q");
    m.def("galois_json", &galois_json, py::arg("disc"), py::arg("qprime"), py::arg("d") = 1);
    m.def("chain_json", &chain_json, py::arg("d"), py::arg("j"));
    m.def("sample_json", &sample_json, py::arg("curve"), py::arg("config"));
    m.def("sweep_json", &sweep_json, py::arg("config"));
    m.def("cm_curves", &cm_curve_list);
}
