#include "rs/lr.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include <json.hpp>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/rng.hpp"

namespace rs::lr {

namespace {

int psize(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

bool outer_contains(const Partition& outer, const Partition& inner) {
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (i >= outer.size() || inner[i] > outer[i]) return false;
    return true;
}

/// Number of LR skew tableaux of shape lam/mu with content nu: row-weak,
/// column-strict fillings whose reverse reading word is a lattice word.
long long count_lr(const Partition& lam, const Partition& mu, const Partition& nu) {
    if (!outer_contains(lam, mu)) return 0;
    const int cells = psize(lam) - psize(mu);
    if (cells != psize(nu)) return 0;
    if (cells == 0) return 1;
    const int nv = static_cast<int>(nu.size());

    struct Cell {
        int row, col;
    };
    std::vector<Cell> order;  // reverse reading order: top-down, right-to-left
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const int lo = (i < mu.size()) ? mu[i] : 0;
        for (int c = lam[i] - 1; c >= lo; --c)
            order.push_back({static_cast<int>(i), c});
    }

    std::vector<std::vector<int>> fill(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) fill[i].assign(lam[i], 0);
    std::vector<int> remaining(nu.begin(), nu.end());
    std::vector<int> counts(nv, 0);
    long long total = 0;

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == order.size()) {
            ++total;
            return;
        }
        const auto [i, c] = order[idx];
        int vmax = nv;
        if (c + 1 < lam[i]) vmax = std::min(vmax, fill[i][c + 1]);
        int vmin = 1;
        if (i > 0) {
            const int lo_above = (static_cast<std::size_t>(i - 1) < mu.size()) ? mu[i - 1] : 0;
            if (c >= lo_above) vmin = fill[i - 1][c] + 1;
        }
        for (int v = vmin; v <= vmax; ++v) {
            if (remaining[v - 1] == 0) continue;
            if (v >= 2 && counts[v - 2] <= counts[v - 1]) continue;  // lattice word
            fill[i][c] = v;
            --remaining[v - 1];
            ++counts[v - 1];
            rec(idx + 1);
            fill[i][c] = 0;
            ++remaining[v - 1];
            --counts[v - 1];
        }
    };
    rec(0);
    return total;
}

using Expansion = std::map<Partition, long long>;

std::mutex g_expand_mutex;
std::map<std::pair<Partition, Partition>, Expansion> g_expand_memo;

/// All partitions lam of |nu|+|mu| containing nu, with lam_1 <= nu_1 + mu_1
/// and at most len(nu)+len(mu) rows.
void candidate_outers(const Partition& nu, const Partition& mu,
                      std::vector<Partition>& out) {
    const int total = psize(nu) + psize(mu);
    const int max_rows = static_cast<int>(nu.size() + mu.size());
    const int max_first = (nu.empty() ? 0 : nu[0]) + (mu.empty() ? 0 : mu[0]);
    Partition cur;
    std::function<void(int, int, int)> gen = [&](int row, int prev, int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (row >= max_rows) return;
        const int need = (row < static_cast<int>(nu.size())) ? nu[row] : 0;
        const int hi = std::min(prev, remaining);
        for (int len = hi; len >= std::max(need, 1); --len) {
            // Rows below can carry at most (max_rows - row - 1) * len cells.
            if (remaining - len > (max_rows - row - 1) * len) continue;
            cur.push_back(len);
            gen(row + 1, len, remaining - len);
            cur.pop_back();
        }
    };
    if (total == 0) {
        out.push_back({});
        return;
    }
    gen(0, std::min(max_first, total), total);
}

/// s_nu * s_mu in the Schur basis (memoized; nu and mu normalized).
const Expansion& expand2(const Partition& nu, const Partition& mu) {
    const auto key = std::make_pair(nu, mu);
    {
        std::lock_guard<std::mutex> lock(g_expand_mutex);
        auto it = g_expand_memo.find(key);
        if (it != g_expand_memo.end()) return it->second;
    }
    Expansion exp;
    std::vector<Partition> candidates;
    candidate_outers(nu, mu, candidates);
    for (const Partition& lam : candidates) {
        const long long c = count_lr(lam, nu, mu);
        if (c > 0) exp[lam] = c;
    }
    std::lock_guard<std::mutex> lock(g_expand_mutex);
    return g_expand_memo.emplace(key, std::move(exp)).first->second;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

std::string cache_root(const Config& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("RS_CACHE_DIR"); env && *env) return env;
    return "lr_cache";
}

std::mutex g_tuples_mutex;
std::map<std::tuple<std::string, int, int, int>, std::vector<LRTuple>> g_tuples_memo;

std::vector<LRTuple> compute_lr_tuples(int d, int r, int m) {
    const auto ks = index_tuples(d, r);
    std::vector<Partition> lam_of(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) lam_of[i] = partition_of(ks[i]);

    const int box_rows = r;
    const int box_cols = d - r;
    auto in_box = [&](const Partition& p) {
        if (static_cast<int>(p.size()) > box_rows) return false;
        return p.empty() || p[0] <= box_cols;
    };

    std::vector<LRTuple> out;
    std::vector<int> choice(m, 0);
    std::function<void(int, const std::set<Partition>&)> rec =
        [&](int level, const std::set<Partition>& support) {
            if (support.empty()) return;
            if (level == m) {
                for (std::size_t j0 = 0; j0 < ks.size(); ++j0) {
                    if (!support.count(lam_of[j0])) continue;
                    LRTuple t;
                    t.j.reserve(m + 1);
                    t.j.push_back(ks[j0]);
                    for (int l = 0; l < m; ++l) t.j.push_back(ks[choice[l]]);
                    out.push_back(std::move(t));
                    if (out.size() > 2'000'000)
                        throw CapError("enumerate_lr_tuples: tuple list exceeds resource cap");
                }
                return;
            }
            for (std::size_t ji = 0; ji < ks.size(); ++ji) {
                choice[level] = static_cast<int>(ji);
                std::set<Partition> next;
                for (const Partition& nu : support)
                    for (const auto& [lam2, c] : expand2(nu, lam_of[ji]))
                        if (in_box(lam2)) next.insert(lam2);
                rec(level + 1, next);
            }
        };
    std::set<Partition> start{Partition{}};
    rec(0, start);
    std::sort(out.begin(), out.end(),
              [](const LRTuple& a, const LRTuple& b) { return a.j < b.j; });
    return out;
}

nlohmann::json tuples_to_json(const std::vector<LRTuple>& tuples) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tuples) {
        nlohmann::json jt = nlohmann::json::array();
        for (const auto& idx : t.j) jt.push_back(idx);
        arr.push_back(std::move(jt));
    }
    return arr;
}

std::vector<LRTuple> tuples_from_json(const nlohmann::json& arr, int r, int m) {
    std::vector<LRTuple> tuples;
    for (const auto& jt : arr) {
        LRTuple t;
        if (static_cast<int>(jt.size()) != m + 1) throw Error("lr cache: bad tuple arity");
        for (const auto& idx : jt) {
            IndexTuple it = idx.get<IndexTuple>();
            if (static_cast<int>(it.size()) != r) throw Error("lr cache: bad tuple rank");
            t.j.push_back(std::move(it));
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

}  // namespace

Partition normalize(Partition p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] < p[i + 1]) throw ArgumentError("Partition: parts must be non-increasing");
    for (int x : p)
        if (x < 0) throw ArgumentError("Partition: parts must be non-negative");
    return p;
}

Partition partition_of(const IndexTuple& j) {
    const int r = static_cast<int>(j.size());
    if (r == 0) throw ArgumentError("partition_of: empty index tuple");
    for (int i = 0; i + 1 < r; ++i)
        if (j[i] >= j[i + 1])
            throw ArgumentError("partition_of: indices must be strictly increasing");
    if (j[0] < 1) throw ArgumentError("partition_of: indices are 1-based");
    Partition p(r);
    for (int t = 0; t < r; ++t) p[t] = j[r - 1 - t] - (r - t);
    return normalize(std::move(p));
}

std::vector<IndexTuple> index_tuples(int d, int r) {
    std::vector<IndexTuple> out;
    IndexTuple cur;
    std::function<void(int)> gen = [&](int next) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        const int slots = r - static_cast<int>(cur.size());
        for (int v = next; v <= d - slots + 1; ++v) {
            cur.push_back(v);
            gen(v + 1);
            cur.pop_back();
        }
    };
    gen(1);
    return out;
}

long long lr_coefficient(const Partition& outer_raw,
                         const std::vector<Partition>& inners_raw) {
    const Partition outer = normalize(outer_raw);
    if (psize(outer) > 64) throw CapError("lr_coefficient: |outer| exceeds 64 cells");
    std::vector<Partition> inners;
    inners.reserve(inners_raw.size());
    int total = 0;
    for (const auto& p : inners_raw) {
        inners.push_back(normalize(p));
        total += psize(inners.back());
    }
    if (total != psize(outer)) return 0;
    if (inners.empty()) return outer.empty() ? 1 : 0;
    if (!outer_contains(outer, inners[0])) return 0;

    Expansion cur{{inners[0], 1}};
    for (std::size_t j = 1; j < inners.size(); ++j) {
        Expansion next;
        for (const auto& [nu, c] : cur)
            for (const auto& [lam2, c2] : expand2(nu, inners[j]))
                if (outer_contains(outer, lam2)) next[lam2] += c * c2;
        cur = std::move(next);
        if (cur.empty()) return 0;
    }
    const auto it = cur.find(outer);
    return it == cur.end() ? 0 : it->second;
}

std::vector<LRTuple> enumerate_lr_tuples(int d, int r, int m, const Config& cfg) {
    if (d < 2 || r < 1 || r > d - 1)
        throw ArgumentError("enumerate_lr_tuples: need 1 <= r <= d-1");
    if (m < 1) throw ArgumentError("enumerate_lr_tuples: need m >= 1");
    if (std::pow(binom(d, r), m + 1) > 1e7)
        throw CapError("enumerate_lr_tuples: C(d,r)^{m+1} exceeds 10^7");

    const std::string root = cache_root(cfg);
    const auto key = std::make_tuple(root, d, r, m);
    {
        std::lock_guard<std::mutex> lock(g_tuples_mutex);
        auto it = g_tuples_memo.find(key);
        if (it != g_tuples_memo.end()) return it->second;
    }

    namespace fs = std::filesystem;
    const fs::path cache_file = fs::path(root) /
        ("d" + std::to_string(d) + "_r" + std::to_string(r) + "_m" + std::to_string(m) +
         ".json");

    std::vector<LRTuple> tuples;
    bool loaded = false;
    if (fs::exists(cache_file)) {
        try {
            std::ifstream in(cache_file);
            nlohmann::json j;
            in >> j;
            tuples = tuples_from_json(j, r, m);
            loaded = true;
        } catch (const std::exception&) {
            loaded = false;  // stale or corrupt cache: recompute
        }
    }
    if (!loaded) {
        tuples = compute_lr_tuples(d, r, m);
        std::error_code ec;
        fs::create_directories(cache_file.parent_path(), ec);
        if (!ec) {
            static std::atomic<unsigned> tmp_counter{0};
            const fs::path tmp =
                cache_file.string() + ".tmp" + std::to_string(tmp_counter.fetch_add(1));
            std::ofstream out(tmp);
            if (out) {
                out << tuples_to_json(tuples);
                out.close();
                fs::rename(tmp, cache_file, ec);  // best effort
                if (ec) fs::remove(tmp, ec);
            }
        }
    }

    std::lock_guard<std::mutex> lock(g_tuples_mutex);
    return g_tuples_memo.emplace(key, std::move(tuples)).first->second;
}

InequalitySystem inequality_system(const Parameters& params, const Weights& w,
                                   const Config& cfg) {
    InequalitySystem sys;
    sys.d = params.d;
    sys.tau = w.tau;

    // One rank at a time in parallel, merged in r order.
    using RowMap = std::map<std::vector<int>, double>;
    auto per_rank = [&](std::size_t idx) {
        const int r = static_cast<int>(idx) + 1;
        RowMap best;
        for (const auto& t : enumerate_lr_tuples(params.d, r, params.m, cfg)) {
            std::vector<int> j0;
            j0.reserve(t.j[0].size());
            for (int idx2 : t.j[0]) j0.push_back(idx2 - 1);
            double rhs = 0.0;
            for (int i = 0; i < params.m; ++i) {
                int hits = 0;
                for (int idx2 : t.j[i + 1])
                    if (idx2 <= params.k[i]) ++hits;
                rhs += w.v(i) * w.v(i) * hits;
            }
            auto it = best.find(j0);
            if (it == best.end() || rhs < it->second) best[j0] = rhs;
        }
        return best;
    };
    const auto maps = batch::map_indexed<RowMap>(
        static_cast<std::size_t>(std::max(0, params.d - 1)), per_rank,
        batch::Exec::OpenMP);
    std::map<std::vector<int>, double> best;
    for (const auto& m : maps)
        for (const auto& [j0, rhs] : m) {
            auto it = best.find(j0);
            if (it == best.end() || rhs < it->second) best[j0] = rhs;
        }
    sys.rows.assign(best.begin(), best.end());
    return sys;
}

std::pair<bool, Certificate> op_picture_contains(const Parameters& params,
                                                 const Weights& w,
                                                 const SpectrumVector& mu,
                                                 const Config& cfg) {
    if (mu.size() != params.d)
        throw ArgumentError("op_picture_contains: mu must have length d");
    for (int i = 0; i < params.m; ++i)
        if (params.k[i] > params.d)
            throw ArgumentError("op_picture_contains: k_i > d admits no projective system");

    const double slack = cfg.membership_slack * std::max(1.0, w.tau);
    Certificate cert;

    const double trace = mu.entries.sum();
    if (std::abs(trace - w.tau) > slack) {
        cert.member = false;
        cert.violated = Violation{"trace", 0, {}, trace, w.tau};
        return {false, cert};
    }

    // Fast feasibility pass on the deduplicated system; on failure, scan the
    // full family in canonical (r, lex) order for the first violated tuple.
    const auto ineq = inequality_system(params, w, cfg);
    bool ok = true;
    for (const auto& [j0, rhs] : ineq.rows) {
        double lhs = 0.0;
        for (int i : j0) lhs += mu[i];
        if (lhs > rhs + slack) {
            ok = false;
            break;
        }
    }
    if (!ok) {
        for (int r = 1; r <= params.d - 1; ++r) {
            for (const auto& t : enumerate_lr_tuples(params.d, r, params.m, cfg)) {
                double lhs = 0.0;
                for (int idx : t.j[0]) lhs += mu[idx - 1];
                double rhs = 0.0;
                for (int i = 0; i < params.m; ++i) {
                    int hits = 0;
                    for (int idx : t.j[i + 1])
                        if (idx <= params.k[i]) ++hits;
                    rhs += w.v(i) * w.v(i) * hits;
                }
                if (lhs > rhs + slack) {
                    cert.member = false;
                    Violation v;
                    v.family = "klyachko";
                    v.index = r;
                    for (const auto& jt : t.j) v.tuple.push_back(jt);
                    v.lhs = lhs;
                    v.rhs = rhs;
                    cert.violated = std::move(v);
                    return {false, cert};
                }
            }
        }
        throw Error("op_picture_contains: dedup/scan disagreement");
    }

    // mu_d > 0 boundary: judged by the same relative rule that decides
    // invertibility everywhere else, so sampled RS spectra are never
    // rejected for being close to the closure face.
    if (!(mu[params.d - 1] > cfg.rank_tol_rel * mu[0])) {
        cert.member = false;
        cert.violated = Violation{"positivity", params.d, {}, mu[params.d - 1], 0.0};
        return {false, cert};
    }
    return {true, Certificate::member_ok()};
}

bool op_picture_convexity_probe(const Parameters& params, const Weights& w, int trials,
                                std::uint64_t seed, batch::Exec exec, const Config& cfg) {
    inequality_system(params, w, cfg);  // warm the cache before going parallel
    auto one = [&](std::size_t t) -> bool {
        const auto sys1 = geom::random_projective(params, w, splitmix64(seed ^ (2 * t + 1)), cfg);
        const auto sys2 = geom::random_projective(params, w, splitmix64(seed ^ (2 * t + 2)), cfg);
        const RVec mu1 = spectrum(sys1).entries;
        const RVec mu2 = spectrum(sys2).entries;
        for (double tmix : {0.25, 0.5, 0.75}) {
            const RVec mix = tmix * mu1 + (1.0 - tmix) * mu2;
            const auto mu = SpectrumVector::sort_of(mix);
            if (!op_picture_contains(params, w, mu, cfg).first) return false;
        }
        return true;
    };
    const auto results = batch::map_indexed<bool>(static_cast<std::size_t>(trials), one, exec);
    return std::all_of(results.begin(), results.end(), [](bool b) { return b; });
}

}  // namespace rs::lr
