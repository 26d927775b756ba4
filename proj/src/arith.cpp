#include "smoothcircle/arith.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "smoothcircle/errors.hpp"
#include "smoothcircle/parallel.hpp"
#include "smoothcircle/primes.hpp"

namespace smoothcircle {

using u128 = unsigned __int128;

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void checked_add(u128& acc, u128 v) {
    if (acc > std::numeric_limits<u128>::max() - v) throw OverflowError("exact accumulator overflow");
    acc += v;
}

BigInt to_big(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(v);
}

// ---------------------------------------------------------------------------
// segmented sieve
// ---------------------------------------------------------------------------

ExactCount sieve_psi_g(std::uint64_t x, std::uint64_t y, const ExactOptions& opts) {
    const PrimeTable table(std::min(x, y));
    const auto primes = table.entries();
    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 16);
    const std::size_t nseg = static_cast<std::size_t>((x + seg - 1) / seg);

    struct SegResult {
        std::uint64_t sum = 0;
        std::uint64_t terms = 0;
    };
    std::vector<SegResult> results(nseg);

    parallel_for(nseg, resolve_threads(opts.threads), [&](std::size_t k) {
        const std::uint64_t lo = 1 + k * seg;
        const std::uint64_t hi = std::min(x, lo + seg - 1);
        const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        std::vector<std::uint64_t> rem(len);
        std::vector<std::uint32_t> f(len, 1);
        for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;
        for (const auto& e : primes) {
            const std::uint64_t p = e.p;
            if (p > hi) break;
            for (std::uint64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
                const std::size_t i = static_cast<std::size_t>(m - lo);
                unsigned ex = 0;
                do {
                    rem[i] /= p;
                    ++ex;
                } while (rem[i] % p == 0);
                f[i] *= static_cast<std::uint32_t>(r_over_4_local(e.chi, ex));
            }
        }
        SegResult r;
        for (std::size_t i = 0; i < len; ++i) {
            if (rem[i] == 1 && f[i] != 0) {
                r.sum += f[i];
                ++r.terms;
            }
        }
        results[k] = r;
    });

    u128 sum = 0;
    std::uint64_t terms = 0;
    for (const auto& r : results) {
        checked_add(sum, r.sum);
        terms += r.terms;
    }
    ExactCount out;
    out.x = x;
    out.y = y;
    out.value = to_big(sum) * 4;
    out.terms = terms;
    out.nodes = nseg;
    out.method = ExactMethod::sieve;
    return out;
}

// ---------------------------------------------------------------------------
// recursive enumeration over primes in descending order
// ---------------------------------------------------------------------------

template <class V>
std::uint64_t bit_width_of(const V& v) {
    if constexpr (std::is_same_v<V, std::uint64_t>) {
        return static_cast<std::uint64_t>(std::bit_width(v));
    } else if constexpr (std::is_same_v<V, u128>) {
        const auto hi = static_cast<std::uint64_t>(v >> 64);
        return hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<std::uint64_t>(v));
    } else {
        return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
    }
}

struct Accumulator {
    u128 sum = 0;
    u128 terms = 0;
    void add(std::uint64_t weight, std::uint64_t count) {
        checked_add(sum, static_cast<u128>(weight) * count);
        checked_add(terms, count);
    }
};

class Enumerator {
public:
    Enumerator(std::vector<std::uint64_t> primes_desc, std::vector<int> chis, std::uint64_t budget)
        : ps_(std::move(primes_desc)), chi_(std::move(chis)), budget_(budget) {}

    struct Task {
        std::size_t i;
        BigInt v;
        std::uint64_t w;
    };

    // Expands tasks breadth-first until the frontier is wide enough to share
    // between threads; leaves met on the way are accumulated into `acc`.
    std::vector<Task> frontier(const BigInt& x, std::size_t target, Accumulator& acc) {
        std::vector<Task> tasks{{0, x, 1}};
        for (int depth = 0; depth < 3 && tasks.size() < target; ++depth) {
            std::vector<Task> next;
            for (const auto& t : tasks) {
                count_node(local_nodes_);
                visit(t.i, t.v, t.w, acc, [&](std::size_t j, const BigInt& c, std::uint64_t w) {
                    next.push_back({j, c, w});
                });
            }
            tasks = std::move(next);
        }
        flush(local_nodes_);
        return tasks;
    }

    void run(const Task& t, Accumulator& acc) {
        std::uint64_t local = 0;
        dispatch(t.i, t.v, t.w, acc, local);
        flush(local);
    }

    std::uint64_t nodes() const { return nodes_.load(); }

private:
    template <class V>
    std::size_t first_at_most(std::size_t i, const V& v) const {
        // ps_ is descending; find first index >= i with ps_[j] <= v
        auto it = std::lower_bound(ps_.begin() + static_cast<std::ptrdiff_t>(i), ps_.end(), v,
                                   [](std::uint64_t p, const V& bound) { return V(p) > bound; });
        return static_cast<std::size_t>(it - ps_.begin());
    }

    // Handles one node: leaves go to acc, internal nodes report children.
    template <class V, class OnChild>
    void visit(std::size_t i, const V& v, std::uint64_t w, Accumulator& acc, OnChild&& on_child) const {
        const std::size_t j = first_at_most(i, v);
        if (j == ps_.size()) {
            acc.add(w, 1);  // only n = 1 remains
            return;
        }
        if (j + 1 == ps_.size()) {
            // remaining prime is 2 with local weight 1: 2^0 .. 2^k <= v
            acc.add(w, bit_width_of(v));
            return;
        }
        const std::uint64_t p = ps_[j];
        on_child(j + 1, v, w);
        if (chi_[j] < 0) {
            V c = v / p / p;
            while (c >= 1) {
                on_child(j + 1, c, w);
                c = c / p / p;
            }
        } else {
            V c = v / p;
            for (std::uint64_t k = 1; c >= 1; ++k) {
                on_child(j + 1, c, w * (chi_[j] > 0 ? k + 1 : 1));
                c = c / p;
            }
        }
    }

    template <class V>
    void dispatch(std::size_t i, const V& v, std::uint64_t w, Accumulator& acc, std::uint64_t& local) {
        if constexpr (!std::is_same_v<V, std::uint64_t>) {
            if (v <= V(std::numeric_limits<std::uint64_t>::max())) {
                dfs<std::uint64_t>(i, static_cast<std::uint64_t>(v), w, acc, local);
                return;
            }
        }
        if constexpr (std::is_same_v<V, BigInt>) {
            if (v <= BigInt(to_big(std::numeric_limits<u128>::max()))) {
                const auto lo = static_cast<std::uint64_t>(v & std::numeric_limits<std::uint64_t>::max());
                const auto hi = static_cast<std::uint64_t>(v >> 64);
                dfs<u128>(i, (static_cast<u128>(hi) << 64) | lo, w, acc, local);
                return;
            }
        }
        dfs<V>(i, v, w, acc, local);
    }

    template <class V>
    void dfs(std::size_t i, const V& v, std::uint64_t w, Accumulator& acc, std::uint64_t& local) {
        count_node(local);
        visit(i, v, w, acc, [&](std::size_t j, const V& c, std::uint64_t cw) {
            if constexpr (std::is_same_v<V, std::uint64_t>)
                dfs<V>(j, c, cw, acc, local);
            else
                dispatch(j, c, cw, acc, local);
        });
    }

    void count_node(std::uint64_t& local) {
        if (++local >= kFlushEvery) flush(local);
    }

    void flush(std::uint64_t& local) {
        const std::uint64_t total = nodes_.fetch_add(local) + local;
        local = 0;
        if (total > budget_)
            throw ResourceLimitError("recursive enumeration exceeded node budget of " + std::to_string(budget_));
    }

    static constexpr std::uint64_t kFlushEvery = 1 << 16;

    std::vector<std::uint64_t> ps_;
    std::vector<int> chi_;
    std::uint64_t budget_;
    std::atomic<std::uint64_t> nodes_{0};
    std::uint64_t local_nodes_ = 0;
};

ExactCount recursive_psi_g(const BigInt& x, std::uint64_t y, const ExactOptions& opts) {
    std::uint64_t ylim = y;
    if (x < y) ylim = static_cast<std::uint64_t>(x);
    const PrimeTable table(ylim);
    std::vector<std::uint64_t> ps;
    std::vector<int> chis;
    for (auto it = table.entries().rbegin(); it != table.entries().rend(); ++it) {
        ps.push_back(it->p);
        chis.push_back(it->chi);
    }

    Enumerator en(std::move(ps), std::move(chis), opts.node_budget);
    const unsigned threads = resolve_threads(opts.threads);
    Accumulator head;
    const auto tasks = en.frontier(x, threads > 1 ? 16 * threads : 1, head);

    std::vector<Accumulator> partial(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t k) { en.run(tasks[k], partial[k]); });

    u128 sum = head.sum;
    u128 terms = head.terms;
    for (const auto& a : partial) {
        checked_add(sum, a.sum);
        checked_add(terms, a.terms);
    }
    if (terms > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("term count overflow");

    ExactCount out;
    out.x = x;
    out.y = y;
    out.value = to_big(sum) * 4;
    out.terms = static_cast<std::uint64_t>(terms);
    out.nodes = en.nodes();
    out.method = ExactMethod::recursive;
    return out;
}

}  // namespace

std::string_view to_string(ExactMethod m) {
    switch (m) {
        case ExactMethod::sieve: return "sieve";
        case ExactMethod::recursive: return "recursive";
        case ExactMethod::automatic: return "auto";
    }
    return "?";
}

ExactMethod parse_exact_method(std::string_view s) {
    if (s == "sieve") return ExactMethod::sieve;
    if (s == "recursive") return ExactMethod::recursive;
    if (s == "auto") return ExactMethod::automatic;
    throw DomainError("unknown exact method: " + std::string(s));
}

std::uint64_t r_over_4(std::uint64_t n, Factorization factorization) {
    if (n == 0) throw DomainError("r_over_4: n must be positive");
    u128 product = 1;
    std::uint64_t value = 1;
    std::vector<std::uint64_t> seen;
    for (const auto& [p, e] : factorization) {
        if (e == 0 || !is_prime(p)) throw DomainError("r_over_4: invalid factor " + std::to_string(p));
        if (std::find(seen.begin(), seen.end(), p) != seen.end())
            throw DomainError("r_over_4: repeated prime " + std::to_string(p));
        seen.push_back(p);
        for (unsigned k = 0; k < e; ++k) {
            product *= p;
            if (product > n) throw DomainError("r_over_4: factorization exceeds n");
        }
        value *= r_over_4_local(chi4(p), e);
    }
    if (product != n) throw DomainError("r_over_4: factorization does not multiply to n");
    return value;
}

std::uint64_t lattice_r(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a * a <= n; ++a) {
        const std::uint64_t rest = n - a * a;
        const std::uint64_t b = isqrt(rest);
        if (b * b == rest) count += (a > 0 ? 2 : 1) * (b > 0 ? 2 : 1);
    }
    return count;
}

ExactCount exact_psi_g(const BigInt& x, std::uint64_t y, const ExactOptions& opts) {
    if (x < 1) throw DomainError("exact_psi_g: x must be >= 1");
    if (y < 2) throw DomainError("exact_psi_g: y must be >= 2");
    ExactMethod method = opts.method;
    if (method == ExactMethod::automatic)
        method = (x <= opts.auto_sieve_below) ? ExactMethod::sieve : ExactMethod::recursive;
    if (method == ExactMethod::sieve) {
        if (x > opts.sieve_max_x)
            throw DomainError("exact_psi_g: x beyond the sieve limit " + std::to_string(opts.sieve_max_x));
        return sieve_psi_g(static_cast<std::uint64_t>(x), y, opts);
    }
    return recursive_psi_g(x, y, opts);
}

}  // namespace smoothcircle
