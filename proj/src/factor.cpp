#include "pst/factor.hpp"

#include <algorithm>
#include <numeric>

#include "pst/errors.hpp"

namespace pst {

namespace {

using u64 = uint64_t;
using u128 = __uint128_t;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

// Brent's cycle-finding variant of Pollard rho with batched gcds. Fully
// deterministic: x0 = 2 and the polynomial offset walks 1, 2, 3, ... so a
// given n always factors the same way.
u64 brent_rho(u64 n, u64& budget) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const u64 batch = 128;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (u64 k = 0; k < r && g == 1; k += batch) {
                ys = y;
                const u64 lim = std::min(batch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    if (budget == 0) throw BudgetError("factorization budget exhausted");
                    --budget;
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot; replay one step at a time.
            do {
                if (budget == 0) throw BudgetError("factorization budget exhausted");
                --budget;
                ys = (mulmod(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g; // nontrivial factor
        // Degenerate cycle for this offset; try the next one.
    }
}

constexpr size_t kSpfLimit = (size_t{1} << 21) + 1;

std::vector<uint32_t> build_spf(size_t limit) {
    std::vector<uint32_t> spf(limit, 0);
    for (size_t i = 2; i < limit; ++i) {
        if (spf[i] != 0) continue;
        for (size_t j = i; j < limit; j += i)
            if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    }
    return spf;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set decides primality for every 64-bit integer.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<uint32_t> sieve_primes(uint32_t limit) {
    std::vector<bool> composite(limit, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j < limit; j += i) composite[static_cast<size_t>(j)] = true;
    }
    return primes;
}

uint64_t Factorization::tau() const {
    uint64_t t = 1;
    for (const auto& [p, e] : pe) t *= static_cast<uint64_t>(e) + 1;
    return t;
}

bool Factorization::squarefree() const {
    for (const auto& [p, e] : pe)
        if (e > 1) return false;
    return true;
}

Factorizer::Factorizer(const Budgets& budgets)
    : trial_limit_(budgets.trial_limit),
      rho_budget_(budgets.rho_budget),
      spf_(build_spf(std::min<size_t>(kSpfLimit, static_cast<size_t>(trial_limit_) * 2 + 1))),
      primes_(sieve_primes(static_cast<uint32_t>(std::min<u64>(trial_limit_, 0xFFFFFFFFull)))) {}

Factorization Factorizer::factor(u64 v) const {
    if (v == 0) throw ParseError("cannot factor 0");
    std::vector<std::pair<u64, int>> raw;
    auto push = [&raw](u64 p) {
        for (auto& [q, e] : raw)
            if (q == p) {
                ++e;
                return;
            }
        raw.emplace_back(p, 1);
    };

    // Queue of pending cofactors; rho may split a value into two composites.
    std::vector<u64> pending{v};
    u64 budget = rho_budget_;
    while (!pending.empty()) {
        u64 m = pending.back();
        pending.pop_back();
        while (m > 1 && m < spf_.size()) { // table walk
            const u64 p = spf_[static_cast<size_t>(m)];
            push(p);
            m /= p;
        }
        if (m == 1) continue;
        for (uint32_t p : primes_) { // trial division
            if (u64(p) * p > m) break;
            while (m % p == 0) {
                push(p);
                m /= p;
            }
        }
        if (m == 1) continue;
        const u64 tl = trial_limit_;
        if (m < tl * tl || is_prime_u64(m)) {
            // No prime factor below the trial limit and below sqrt(m) -> prime.
            push(m);
            continue;
        }
        const u64 g = brent_rho(m, budget);
        pending.push_back(g);
        pending.push_back(m / g);
    }

    std::sort(raw.begin(), raw.end());
    Factorization f;
    f.pe = std::move(raw);
    return f;
}

const Factorizer& default_factorizer() {
    static const Factorizer engine{Budgets{}};
    return engine;
}

} // namespace pst
