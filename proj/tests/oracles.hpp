#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's Fock or analysis code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

inline double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

// Naive permanent: sum over all n! permutations.
inline cplx permanent(const Eigen::MatrixXcd& a)
{
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    cplx sum = 0.0;
    do {
        cplx prod = 1.0;
        for (int r = 0; r < n; ++r)
            prod *= a(r, perm[static_cast<std::size_t>(r)]);
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

inline std::vector<int> repeated_ports(const std::vector<int>& occupation)
{
    std::vector<int> out;
    for (std::size_t p = 0; p < occupation.size(); ++p)
        out.insert(out.end(), static_cast<std::size_t>(occupation[p]), static_cast<int>(p));
    return out;
}

// <mu|U|nu> = perm(T[mu rows, nu cols]) / sqrt(prod mu! prod nu!).
inline cplx permanent_amplitude(const Eigen::MatrixXcd& t, const std::vector<int>& nu, const std::vector<int>& mu)
{
    const auto rows = repeated_ports(mu);
    const auto cols = repeated_ports(nu);
    const int m = static_cast<int>(rows.size());
    Eigen::MatrixXcd sub(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            sub(r, c) = t(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    double norm = 1.0;
    for (int k : mu)
        norm *= factorial(k);
    for (int k : nu)
        norm *= factorial(k);
    return permanent(sub) / std::sqrt(norm);
}

// Polynomial in output creation operators b_1^dagger .. b_N^dagger, keyed by
// exponent vector.
using Polynomial = std::map<std::vector<int>, cplx>;

inline Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    Polynomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = ea[k] + eb[k];
            out[e] += ca * cb;
        }
    return out;
}

// Image of a_j^dagger: sum_m T(m, j) b_m^dagger.
inline Polynomial creation_image(const Eigen::MatrixXcd& t, int j)
{
    Polynomial out;
    const int n = static_cast<int>(t.rows());
    for (int m = 0; m < n; ++m) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(m)] = 1;
        out[e] = t(m, j);
    }
    return out;
}

// Output state of a superposition of Fock inputs, expanded through the
// operator substitution. Returns amplitudes keyed by output occupation.
inline std::map<std::vector<int>, cplx> expand(const Eigen::MatrixXcd& t,
                                                const std::vector<std::pair<std::vector<int>, cplx>>& input)
{
    const int n = static_cast<int>(t.rows());
    Polynomial total;
    for (const auto& [occ, amp] : input) {
        Polynomial term{{std::vector<int>(static_cast<std::size_t>(n), 0), 1.0}};
        double norm = 1.0;
        for (int j = 0; j < n; ++j) {
            norm *= factorial(occ[static_cast<std::size_t>(j)]);
            for (int k = 0; k < occ[static_cast<std::size_t>(j)]; ++k)
                term = multiply(term, creation_image(t, j));
        }
        for (const auto& [e, c] : term)
            total[e] += amp * c / std::sqrt(norm);
    }
    // (b^dagger)^k |0> = sqrt(k!) |k>
    std::map<std::vector<int>, cplx> out;
    for (const auto& [e, c] : total) {
        double w = 1.0;
        for (int k : e)
            w *= factorial(k);
        out[e] = c * std::sqrt(w);
    }
    return out;
}

// Two-photon NOON input (|2 at i> + e^{i phi}|2 at j>)/sqrt 2, zero-based ports.
inline std::vector<std::pair<std::vector<int>, cplx>> noon(int ports, int i, int j, double phi)
{
    std::vector<int> a(static_cast<std::size_t>(ports), 0), b(static_cast<std::size_t>(ports), 0);
    a[static_cast<std::size_t>(i)] = 2;
    b[static_cast<std::size_t>(j)] = 2;
    return {{a, 1.0 / std::sqrt(2.0)}, {b, std::polar(1.0 / std::sqrt(2.0), phi)}};
}

// C(m, n) = P(m, n) / (2 - delta) from the expansion, zero-based ports.
inline double modified_correlation(const std::map<std::vector<int>, cplx>& out, int ports, int m, int n)
{
    std::vector<int> e(static_cast<std::size_t>(ports), 0);
    e[static_cast<std::size_t>(m)] += 1;
    e[static_cast<std::size_t>(n)] += 1;
    const auto it = out.find(e);
    const double p = it == out.end() ? 0.0 : std::norm(it->second);
    return m == n ? p : 0.5 * p;
}

inline Eigen::MatrixXcd two_port(double theta)
{
    Eigen::MatrixXcd t(2, 2);
    const cplx i(0.0, 1.0);
    t << std::cos(theta), i * std::sin(theta), i * std::sin(theta), std::cos(theta);
    return t;
}

// Hand expansion of psi_2^phi through [[c, is], [is, c]]:
//   a1^2 -> (c b1 + i s b2)^2,  a2^2 -> (i s b1 + c b2)^2
// gives P11 = P22 = (c^4 + s^4 - 2 c^2 s^2 cos phi) / 2 and
// P12 = 2 c^2 s^2 (1 + cos phi).
struct TwoPortCurves {
    double auto_c;
    double cross_c;
};

inline TwoPortCurves two_port_curves(double theta, double phi)
{
    const double c2 = std::pow(std::cos(theta), 2), s2 = std::pow(std::sin(theta), 2);
    const double p_auto = 0.5 * (c2 * c2 + s2 * s2 - 2.0 * c2 * s2 * std::cos(phi));
    const double p_cross = 2.0 * c2 * s2 * (1.0 + std::cos(phi));
    return {p_auto, 0.5 * p_cross};
}

// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
// R's diagonal moved into Q.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            z(r, c) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const cplx d = r(k, k);
        q.col(k) *= d / std::abs(d);
    }
    return q;
}

inline std::vector<std::vector<int>> occupations(int ports, int photons)
{
    std::vector<std::vector<int>> out;
    std::vector<int> occ(static_cast<std::size_t>(ports), 0);
    auto rec = [&](auto&& self, int p, int left) -> void {
        if (p == ports - 1) {
            occ[static_cast<std::size_t>(p)] = left;
            out.push_back(occ);
            return;
        }
        for (int k = left; k >= 0; --k) {
            occ[static_cast<std::size_t>(p)] = k;
            self(self, p + 1, left - k);
        }
    };
    rec(rec, 0, photons);
    return out;
}

inline double circular_distance(double a, double b)
{
    const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

} // namespace oracle
