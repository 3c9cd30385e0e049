#include "cmheight/cm.hpp"

#include "cmheight/arith.hpp"

namespace cmh {

namespace {

struct Row {
    const char* j;
    long order_disc;
    std::array<long long, 5> a;
};

const Row kRows[] = {
    {"0", -3, {0, 0, 0, 0, 1}},
    {"1728", -4, {0, 0, 0, -1, 0}},
    {"-3375", -7, {1, -1, 0, -2, -1}},
    {"8000", -8, {0, 4, 0, 2, 0}},
    {"-32768", -11, {0, -1, 1, -7, 10}},
    {"54000", -12, {0, 0, 0, -15, 22}},
    {"287496", -16, {0, 0, 0, -11, -14}},
    {"-884736", -19, {0, 0, 1, -38, 90}},
    {"-12288000", -27, {0, 0, 1, -270, -1708}},
    {"16581375", -28, {1, -1, 0, -37, -78}},
    {"-884736000", -43, {0, 0, 1, -860, 9707}},
    {"-147197952000", -67, {0, 0, 1, -7370, 243528}},
    {"-262537412640768000", -163, {0, 0, 1, -2174420, 1234136692}},
};

// D = f²·D_K with D_K fundamental.
void split_disc(const Integer& D, Integer& DK, Integer& f) {
    Integer core = squarefree_core(D);
    DK = mod(core, Integer(4)) == 1 ? core : Integer(4 * core);
    Integer f2 = D / DK;
    f = sqrt(f2);
}

}  // namespace

const std::vector<CMDescriptor>& cm_table() {
    static const std::vector<CMDescriptor> table = [] {
        std::vector<CMDescriptor> t;
        for (const auto& r : kRows) {
            CMDescriptor d;
            d.j = Rational(Integer(r.j, 10));
            d.order_disc = r.order_disc;
            split_disc(d.order_disc, d.field_disc, d.conductor);
            t.push_back(d);
        }
        return t;
    }();
    return table;
}

CMDescriptor cm_lookup(const Rational& j) {
    for (const auto& d : cm_table()) {
        if (d.j == j) return d;
    }
    throw std::invalid_argument("not a rational CM j-invariant");
}

CurvePtr cm_representative_curve(const Rational& j) {
    for (const auto& r : kRows) {
        if (Rational(Integer(r.j, 10)) != j) continue;
        std::array<Rational, 5> a;
        for (std::size_t i = 0; i < 5; ++i) a[i] = Rational(Integer(std::to_string(r.a[i]), 10));
        return EllipticCurve::over_Q(a);
    }
    throw std::invalid_argument("not a rational CM j-invariant");
}

}  // namespace cmh
