// Second-order coefficient table for the Rabi model with a thermal boson.
// Every addend is one Term so that tests can localise a faulty entry.
#include <cmath>
#include <stdexcept>

#include "openqb/rabi_perturbative.hpp"

namespace openqb {

cplx Term::operator()(double t) const
{
    cplx v = amp * std::exp(rate * t);
    for (int k = 0; k < tpow; ++k) v *= t;
    return v;
}

std::array<std::array<cplx, 4>, 4> SecondOrderTable::evaluate(double t) const
{
    std::array<std::array<cplx, 4>, 4> out{};
    for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k) {
            cplx s = 0.0;
            for (const auto& term : x[b][k]) s += term(t);
            out[b][k] = s;
        }
    return out;
}

cplx SecondOrderCoeffs::traced(int block) const
{
    // trace of [x00 + x11 z z* + x20 z^2 + x02 z*^2] e^{c z z*} / (1 + nbar)
    return x[block][P00] + nbar_plus_one * x[block][P11];
}

namespace {

struct Consts {
    double nb, gam, w, W;
    cplx pp, pm;
    double Pp, Pm, S, K;
};

Consts consts(const PhysicalParams& p, double w)
{
    if (!(p.gamma > 0.0)) throw std::invalid_argument("second-order coefficients require gamma > 0");
    Consts c;
    c.nb = derive(p).nbar;
    c.gam = p.gamma;
    c.w = w;
    c.W = p.Omega;
    c.pp = cplx(c.gam, 2.0 * (w + c.W));
    c.pm = cplx(c.gam, 2.0 * (w - c.W));
    c.Pp = std::norm(c.pp);
    c.Pm = std::norm(c.pm);
    c.S = c.gam * c.gam + 4.0 * (w * w + c.W * c.W);
    c.K = 2.0 * c.nb * c.nb + 2.0 * c.nb + 1.0;
    return c;
}

void add_with_conj(std::vector<Term>& v, cplx amp, cplx rate, const std::string& label)
{
    v.push_back({amp, rate, 0, label});
    v.push_back({std::conj(amp), std::conj(rate), 0, label + " (c.c.)"});
}

}  // namespace

std::array<std::vector<Term>, 4> second_order_diag_terms(const PhysicalParams& p, double omega, double q11,
                                                         double q22, bool secular)
{
    using std::conj;
    const Consts c = consts(p, omega);
    const double n = c.nb, gam = c.gam, w = c.w, W = c.W, Pp = c.Pp, Pm = c.Pm, S = c.S, K = c.K;
    const cplx pp = c.pp, pm = c.pm;
    std::array<std::vector<Term>, 4> x;

    // (0,0)
    add_with_conj(x[P00], 8.0 * gam * ((n + 1) * q22 - n * q11) / (pp * Pp), -pp / 2.0, "x11_00 psi+ decay");
    add_with_conj(x[P00], -4.0 * (2.0 * n * gam + conj(pm)) * ((n + 1) * q11 - n * q22) / ((n + 1) * pm * Pm), -pm / 2.0,
                  "x11_00 psi- decay");
    const double Ag = (8.0 * n * (n + 1) * S * q11 - 4.0 * (K * Pm + 16.0 * n * n * w * W) * q22) / ((n + 1) * Pp * Pm);
    x[P00].push_back({Ag, -gam, 0, "x11_00 gamma decay"});
    if (secular)
        x[P00].push_back({4.0 * gam * (q22 * ((2 * n + 1) * Pm + 16.0 * n * w * W) - q11 * ((2 * n + 1) * Pp - 16.0 * n * w * W))
                              / (Pp * Pm),
                          0.0, 1, "x11_00 secular"});
    x[P00].push_back({4.0 * q11 * (4.0 * gam * gam * n / (Pp * Pp) + 4.0 * gam * gam * (n + 1) / (Pm * Pm) - (n + 2) / Pm - n / Pp)
                          - 4.0 * q22
                                * (4.0 * gam * gam * n / (Pm * Pm) + 4.0 * gam * gam * (n + 1) / (Pp * Pp)
                                   - n * (n + 2) / ((n + 1) * Pm) - (n + 1) / Pp),
                      0.0, 0, "x11_00 constant"});

    // (1,1)
    add_with_conj(x[P11], 4.0 * (n * q11 - (n + 1) * q22) / ((n + 1) * Pp), -pp / 2.0, "x11_11 psi+ decay");
    add_with_conj(x[P11], 4.0 * n * ((n + 1) * q11 - n * q22) / ((n + 1) * (n + 1) * Pm), -pm / 2.0, "x11_11 psi- decay");
    const double Bg = (8.0 * n * (n + 1) * S * q11 - 4.0 * (K * Pm + 16.0 * n * n * w * W) * q22) / ((n + 1) * (n + 1) * Pp * Pm);
    x[P11].push_back({-Bg, 0.0, 0, "x11_11 constant"});
    x[P11].push_back({-Bg, -gam, 0, "x11_11 gamma decay"});

    // (2,0)
    const cplx g2(gam, 2.0 * W);
    const cplx dd = (n + 1) * (n + 1) * g2 * pp * conj(pm);
    x[P20].push_back({(4.0 * (n + 1) * q11 - 4.0 * n * q22) / ((n + 1) * pp * conj(pm)), -conj(pm) / 2.0, 0, "x11_20 psi-* decay"});
    x[P20].push_back({4.0 * n * (n * q11 - (n + 1) * q22) / ((n + 1) * (n + 1) * pp * conj(pm)), -pp / 2.0, 0, "x11_20 psi+ decay"});
    x[P20].push_back({(4.0 * n * (n + 1) * g2 * q22 - 2.0 * (K * conj(pm) + 4.0 * I * n * n * w) * q11) / dd, -g2, 0,
                      "x11_20 2Omega rotation"});
    x[P20].push_back({(4.0 * n * (n + 1) * g2 * q22 - 2.0 * (K * pp - 4.0 * I * n * n * w) * q11) / dd, 0.0, 0, "x11_20 constant"});

    // (0,2) is the conjugate of (2,0)
    for (const auto& term : x[P20]) x[P02].push_back({conj(term.amp), conj(term.rate), term.tpow, term.label + " (c.c.)"});
    return x;
}

std::array<std::vector<Term>, 4> second_order_offdiag_terms(const PhysicalParams& p, cplx q12, cplx q21, bool secular)
{
    using std::conj;
    const Consts c = consts(p, p.omega);
    const double n = c.nb, gam = c.gam, w = c.w, W = c.W, Pp = c.Pp, Pm = c.Pm, K = c.K;
    const cplx pp = c.pp, pm = c.pm;
    const cplx ppc = conj(pp), pmc = conj(pm);
    const double n1 = n + 1.0;
    std::array<std::vector<Term>, 4> x;

    // (0,0)
    x[P00].push_back({-2.0 * I * (gam + 2.0 * gam * n * n + 3.0 * gam * n + 2.0 * I * n * w) * q21 / (n1 * w * pp * pm), I * w, 0,
                      "x12_00 counter-rotating"});
    x[P00].push_back({(-4.0 * gam * K * q21 + 8.0 * n * n1 * cplx(gam, 2.0 * w) * q12) / (gam * n1 * pp * pm), cplx(-gam, -w), 0,
                      "x12_00 gamma decay"});
    x[P00].push_back({(4.0 * pmc * (2.0 * gam * K + n * pm) * q21 - 4.0 * pp * n1 * (4.0 * gam * n + pm) * q12) / (n1 * Pm * pp * pmc),
                      -cplx(gam, 2.0 * W) / 2.0, 0, "x12_00 half decay +Omega"});
    x[P00].push_back({(4.0 * ppc * (2.0 * gam * K + n * pp) * q21 - 4.0 * pm * n1 * (4.0 * gam * n + pp) * q12) / (n1 * Pp * ppc * pm),
                      -cplx(gam, -2.0 * W) / 2.0, 0, "x12_00 half decay -Omega"});
    const cplx a(gam, -2.0 * w);
    const cplx pc = ppc * pmc;
    x[P00].push_back({(2.0 * pc * gam * (2 * n + 1) * cplx(2.0 * w, gam) * q21
                       + 8.0 * w * (a * a * (gam + 3.0 * gam * n - 2.0 * I * n * w) - 4.0 * W * W * (gam + gam * n + 2.0 * I * n * w)) * q12)
                          / (gam * w * pc * pc),
                      -I * w, 0, "x12_00 rotating"});
    if (secular) x[P00].push_back({-4.0 * (2 * n + 1) * a * q12 / pc, -I * w, 1, "x12_00 secular"});

    // (1,1)
    x[P11].push_back({-8.0 * n * a * q12 / (gam * n1 * pc), -I * w, 0, "x12_11 rotating"});
    x[P11].push_back({4.0 * K * q21 / (n1 * n1 * pp * pm), I * w, 0, "x12_11 counter-rotating"});
    x[P11].push_back({(4.0 * gam * K * q21 - 8.0 * n * n1 * cplx(gam, 2.0 * w) * q12) / (gam * n1 * n1 * pp * pm), cplx(-gam, -w), 0,
                      "x12_11 gamma decay"});
    x[P11].push_back({(8.0 * pp * n * n1 * q12 - 4.0 * pmc * K * q21) / (n1 * n1 * pp * pm * pmc), -cplx(gam, 2.0 * W) / 2.0, 0,
                      "x12_11 half decay +Omega"});
    x[P11].push_back({(8.0 * pm * n * n1 * q12 - 4.0 * ppc * K * q21) / (n1 * n1 * pp * pm * ppc), -cplx(gam, -2.0 * W) / 2.0, 0,
                      "x12_11 half decay -Omega"});

    // (2,0)
    const cplx gp(gam, 2.0 * W), gm(gam, -2.0 * W);
    x[P20].push_back({-2.0 * K * q12 / (n1 * n1 * gp * pmc), -I * w, 0, "x12_20 rotating"});
    x[P20].push_back({4.0 * n * q21 / (n1 * pp * pp), I * w, 0, "x12_20 counter-rotating"});
    x[P20].push_back({4.0 * (-2.0 * pmc * n * n1 * q21 + pp * K * q12) / (n1 * n1 * pmc * pp * pp), -gp / 2.0, 0, "x12_20 half decay"});
    x[P20].push_back({2.0 * (2.0 * n * n1 * gp * q21 - pp * K * q12) / (n1 * n1 * gp * pp * pp), -cplx(gam, w + 2.0 * W), 0,
                      "x12_20 full decay"});

    // (0,2)
    x[P02].push_back({-2.0 * K * q12 / (n1 * n1 * gm * ppc), -I * w, 0, "x12_02 rotating"});
    x[P02].push_back({4.0 * n * q21 / (n1 * pm * pm), I * w, 0, "x12_02 counter-rotating"});
    x[P02].push_back({4.0 * (-2.0 * ppc * n * n1 * q21 + pm * K * q12) / (n1 * n1 * ppc * pm * pm), -gm / 2.0, 0, "x12_02 half decay"});
    x[P02].push_back({2.0 * (2.0 * n * n1 * gm * q21 - pm * K * q12) / (n1 * n1 * gm * pm * pm), -cplx(gam, w - 2.0 * W), 0,
                      "x12_02 full decay"});
    return x;
}

SecondOrderTable second_order_table(const PhysicalParams& p, const QubitMatrix& q, bool secular)
{
    if (std::abs(q.q11.imag()) > 1e-12 || std::abs(q.q22.imag()) > 1e-12)
        throw std::invalid_argument("qubit populations must be real");
    SecondOrderTable tab;
    tab.x[0] = second_order_diag_terms(p, p.omega, q.q11.real(), q.q22.real(), secular);
    tab.x[3] = second_order_diag_terms(p, -p.omega, q.q22.real(), q.q11.real(), secular);
    tab.x[1] = second_order_offdiag_terms(p, q.q12, q.q21, secular);
    // x21^(a,b) = conj(x12^(b,a))
    const int swap[4] = {P00, P11, P02, P20};
    for (int k = 0; k < 4; ++k)
        for (const auto& term : tab.x[1][swap[k]])
            tab.x[2][k].push_back({std::conj(term.amp), std::conj(term.rate), term.tpow, term.label + " (conj)"});
    return tab;
}

SecondOrderCoeffs second_order_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q, bool secular)
{
    SecondOrderCoeffs c;
    c.t = t;
    c.nbar_plus_one = 1.0 + derive(p).nbar;
    c.x = second_order_table(p, q, secular).evaluate(t);
    return c;
}

std::array<BargmannFunction, 4> second_order_blocks(const SecondOrderCoeffs& c, double nbar)
{
    std::array<BargmannFunction, 4> out;
    for (int b = 0; b < 4; ++b) {
        BargmannFunction f;
        f.c = nbar / (1.0 + nbar);
        const cplx s = 1.0 / (1.0 + nbar);
        f.poly[{0, 0}] = s * c.x[b][P00];
        f.poly[{1, 1}] = s * c.x[b][P11];
        f.poly[{2, 0}] = s * c.x[b][P20];
        f.poly[{0, 2}] = s * c.x[b][P02];
        out[b] = f;
    }
    return out;
}

}  // namespace openqb
