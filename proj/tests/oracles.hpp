#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "rs/rng.hpp"
#include "rs/types.hpp"

namespace rs_test {

using Partition = std::vector<int>;

/// Naive LR skew-tableau counter: places every distinct permutation of the
/// content multiset into the cells of lam/mu (row-major) and filters by the
/// semistandard and lattice conditions. No pruning; independent of the
/// library's backtracking counter.
inline long long lr_brute(const Partition& lam, const Partition& mu,
                          const Partition& nu) {
    auto part_size = [](const Partition& p) {
        int s = 0;
        for (int x : p) s += x;
        return s;
    };
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (i >= lam.size() || mu[i] > lam[i]) return 0;
    const int cells = part_size(lam) - part_size(mu);
    if (cells != part_size(nu)) return 0;
    if (cells == 0) return 1;

    std::vector<std::pair<int, int>> pos;  // row-major cell list
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const int lo = (i < mu.size()) ? mu[i] : 0;
        for (int c = lo; c < lam[i]; ++c) pos.push_back({static_cast<int>(i), c});
    }

    std::vector<int> word;
    for (std::size_t v = 0; v < nu.size(); ++v)
        for (int t = 0; t < nu[v]; ++t) word.push_back(static_cast<int>(v) + 1);
    std::sort(word.begin(), word.end());

    long long count = 0;
    do {
        // Rebuild the filled shape.
        std::map<std::pair<int, int>, int> fill;
        for (std::size_t t = 0; t < pos.size(); ++t) fill[pos[t]] = word[t];
        bool ok = true;
        for (const auto& [rc, v] : fill) {
            const auto [r, c] = rc;
            if (fill.count({r, c + 1}) && fill[{r, c + 1}] < v) ok = false;    // row weak
            if (fill.count({r + 1, c}) && fill[{r + 1, c}] <= v) ok = false;   // col strict
        }
        if (ok) {
            // Reverse reading word: rows top to bottom, right to left.
            std::vector<int> counts(nu.size(), 0);
            for (std::size_t i = 0; i < lam.size() && ok; ++i) {
                const int lo = (i < mu.size()) ? mu[i] : 0;
                for (int c = lam[i] - 1; c >= lo && ok; --c) {
                    const int v = fill[{static_cast<int>(i), c}];
                    ++counts[v - 1];
                    if (v >= 2 && counts[v - 1] > counts[v - 2]) ok = false;
                }
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    return count;
}

/// All partitions of every size in [0, nmax].
inline std::vector<Partition> partitions_up_to(int nmax) {
    std::vector<Partition> out;
    Partition cur;
    // generate partitions with parts bounded by prev
    std::function<void(int, int)> gen = [&](int remaining, int maxpart) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(remaining, maxpart); part >= 1; --part) {
            cur.push_back(part);
            gen(remaining - part, part);
            cur.pop_back();
        }
    };
    for (int n = 0; n <= nmax; ++n) gen(n, n == 0 ? 1 : n);
    return out;
}

/// Schur-polynomial product oracle: expands s_mu * s_nu in the Schur basis by
/// enumerating semistandard tableaux monomials and greedily peeling leading
/// terms. Completely tableau-free on the product side.
class SchurOracle {
  public:
    using Poly = std::map<std::vector<int>, long long>;  // exponent -> coeff

    explicit SchurOracle(int nvars) : nvars_(nvars) {}

    Poly schur(const Partition& lam) {
        auto it = memo_.find(lam);
        if (it != memo_.end()) return it->second;
        Poly p;
        std::vector<std::vector<int>> rows(lam.size());
        enumerate_ssyt(lam, 0, 0, rows, p);
        memo_[lam] = p;
        return p;
    }

    static Poly multiply(const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::vector<int> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out[e] += ca * cb;
            }
        return out;
    }

    /// Schur expansion of s_mu * s_nu: map partition -> coefficient.
    std::map<Partition, long long> product_in_schur_basis(const Partition& mu,
                                                          const Partition& nu) {
        Poly prod = multiply(schur(mu), schur(nu));
        std::map<Partition, long long> out;
        while (!prod.empty()) {
            // Leading term: lexicographically largest exponent; it is a
            // partition for products of Schur polynomials.
            auto lead = prod.begin();
            for (auto it = prod.begin(); it != prod.end(); ++it)
                if (it->first > lead->first) lead = it;
            Partition lam;
            for (int e : lead->first)
                if (e > 0) lam.push_back(e);
            const long long coeff = lead->second;
            if (coeff == 0) {
                prod.erase(lead);
                continue;
            }
            out[lam] += coeff;
            const Poly s = schur(lam);
            for (const auto& [e, c] : s) {
                prod[e] -= coeff * c;
                if (prod[e] == 0) prod.erase(e);
            }
        }
        return out;
    }

  private:
    void enumerate_ssyt(const Partition& lam, std::size_t row, int col,
                        std::vector<std::vector<int>>& rows, Poly& p) {
        if (row == lam.size()) {
            std::vector<int> expo(nvars_, 0);
            for (const auto& r : rows)
                for (int v : r) ++expo[v - 1];
            p[expo] += 1;
            return;
        }
        if (col == lam[row]) {
            enumerate_ssyt(lam, row + 1, 0, rows, p);
            return;
        }
        const int vmin_row = (col > 0) ? rows[row][col - 1] : 1;
        const int vmin_col =
            (row > 0 && col < lam[row - 1]) ? rows[row - 1][col] + 1 : 1;
        for (int v = std::max(vmin_row, vmin_col); v <= nvars_; ++v) {
            rows[row].push_back(v);
            enumerate_ssyt(lam, row, col + 1, rows, p);
            rows[row].pop_back();
        }
    }

    int nvars_;
    std::map<Partition, Poly> memo_;
};

/// Random doubly stochastic matrix: convex combination of permutations.
inline Eigen::MatrixXd random_doubly_stochastic(int n, rs::Rng& rng, int terms = 6) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    double total = 0.0;
    std::vector<int> perm(n);
    for (int t = 0; t < terms; ++t) {
        for (int i = 0; i < n; ++i) perm[i] = i;
        // Fisher-Yates with the pinned stream.
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next_u64() % (i + 1));
            std::swap(perm[i], perm[j]);
        }
        const double w = rng.uniform() + 1e-3;
        total += w;
        for (int i = 0; i < n; ++i) d(perm[i], i) += w;
    }
    return d / total;
}

}  // namespace rs_test
