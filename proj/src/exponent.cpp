#include "pst/exponent.hpp"

#include <stdexcept>

#include "pst/errors.hpp"

namespace pst {

namespace {

Rat two_pow_minus(int k) { return rat_pow2(-static_cast<long>(k)); }

void check_k(int k, int lo) {
    if (k < lo || k > 64) throw ParseError("level k out of range");
}

// Substitute var := m into a monomial: T = A * var^e becomes A * m^e.
LogMonomial substitute(const LogMonomial& t, const std::string& var, const LogMonomial& m) {
    const Rat e = t.exp_of(var);
    return t.without(var) * m.pow(e);
}

struct Candidate {
    bool neg_inf = false; // value tends to 0 (log -> -infinity)
    LogMonomial value;
    OptWhere where = OptWhere::interior;
    std::optional<LogMonomial> arg;
};

// Exact log-value of a monomial under the aux assignment.
Rat eval_log(const LogMonomial& m, const std::map<std::string, Rat>& aux) {
    Rat total = 0;
    for (const auto& [name, e] : m.exps()) {
        const auto it = aux.find(name);
        if (it == aux.end())
            throw ParseError("aux_log is missing a value for variable " + name);
        total += e * it->second;
    }
    return total;
}

} // namespace

LogMonomial LogMonomial::var(const std::string& name, const Rat& e) {
    LogMonomial m;
    m.set_exp(name, e);
    return m;
}

Rat LogMonomial::exp_of(const std::string& name) const {
    const auto it = exps_.find(name);
    return it == exps_.end() ? Rat(0) : it->second;
}

void LogMonomial::set_exp(const std::string& name, const Rat& e) {
    if (e == 0)
        exps_.erase(name);
    else
        exps_[name] = e;
}

LogMonomial LogMonomial::without(const std::string& name) const {
    LogMonomial m = *this;
    m.exps_.erase(name);
    return m;
}

LogMonomial LogMonomial::operator*(const LogMonomial& o) const {
    LogMonomial m = *this;
    for (const auto& [name, e] : o.exps_) m.set_exp(name, m.exp_of(name) + e);
    return m;
}

LogMonomial LogMonomial::pow(const Rat& e) const {
    LogMonomial m;
    if (e == 0) return m;
    for (const auto& [name, ex] : exps_) m.exps_[name] = ex * e;
    return m;
}

bool LogMonomial::dominates(const LogMonomial& o) const {
    for (const auto& [name, e] : exps_)
        if (e < o.exp_of(name)) return false;
    for (const auto& [name, e] : o.exps_)
        if (exp_of(name) < e) return false;
    return true;
}

std::string LogMonomial::str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [name, e] : exps_) {
        if (!out.empty()) out += " ";
        out += name + "^" + rat_str(e);
    }
    return out;
}

OptResult optimize(const OptProblem& p) {
    if (p.var.empty()) throw ParseError("optimisation variable not set");
    if (p.increasing.empty() && p.decreasing.empty())
        throw ParseError("no terms to optimise over");
    for (const LogMonomial& t : p.increasing)
        if (!(t.exp_of(p.var) > 0))
            throw ParseError("increasing term does not increase in " + p.var);
    for (const LogMonomial& t : p.decreasing)
        if (t.exp_of(p.var) > 0)
            throw ParseError("decreasing term increases in " + p.var);

    std::vector<Candidate> candidates;
    // Limits of the increasing family at the left endpoint.
    for (const LogMonomial& t : p.increasing) {
        Candidate c;
        c.where = OptWhere::lower_endpoint;
        if (p.lower) {
            c.value = substitute(t, p.var, *p.lower);
            c.arg = *p.lower;
        } else {
            c.neg_inf = true; // var -> 0+ kills a positive power
        }
        candidates.push_back(std::move(c));
    }
    // Limits of the decreasing family at the right endpoint.
    for (const LogMonomial& t : p.decreasing) {
        Candidate c;
        c.where = OptWhere::upper_endpoint;
        if (p.upper) {
            c.value = substitute(t, p.var, *p.upper);
            c.arg = *p.upper;
        } else if (t.exp_of(p.var) == 0) {
            c.value = t; // constant in var: its own limit
        } else {
            c.neg_inf = true; // negative power dies at infinity
        }
        candidates.push_back(std::move(c));
    }
    // Crossings: solve F = G for the one value of var where an increasing
    // and a decreasing term agree. Kept even when the crossing lies outside
    // the interval; it is still a lower bound for the max of the two terms.
    for (const LogMonomial& f : p.increasing) {
        for (const LogMonomial& g : p.decreasing) {
            const Rat ef = f.exp_of(p.var), eg = g.exp_of(p.var);
            const Rat delta = ef - eg; // > 0
            const LogMonomial a = f.without(p.var), b = g.without(p.var);
            const LogMonomial cross_arg = (b * a.inv()).pow(Rat(1) / delta);
            Candidate c;
            c.where = OptWhere::interior;
            c.value = a * cross_arg.pow(ef);
            c.arg = cross_arg;
            candidates.push_back(std::move(c));
        }
    }

    OptResult result;
    if (!p.aux_log.empty()) {
        // Numeric mode: candidates order totally by their exact log-values.
        size_t best = 0;
        std::optional<Rat> best_log;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].neg_inf) continue;
            const Rat v = eval_log(candidates[i].value, p.aux_log);
            if (!best_log || v > *best_log) {
                best_log = v;
                best = i;
            }
        }
        if (!best_log) {
            result.unbounded = true;
            return result;
        }
        const Candidate& c = candidates[best];
        result.value = c.value;
        result.where = c.where;
        result.arg = c.arg;
        result.value_log = *best_log;
        if (c.arg) result.arg_log = eval_log(*c.arg, p.aux_log);
        return result;
    }

    // Symbolic mode: a candidate must dominate all others exponent-wise
    // (valid because every quantity is >= 1). No unique dominator means the
    // ordering genuinely depends on the variable ranges; refuse to guess.
    std::optional<size_t> best;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].neg_inf) continue;
        bool top = true;
        for (size_t j = 0; j < candidates.size() && top; ++j) {
            if (j == i || candidates[j].neg_inf) continue;
            top = candidates[i].value.dominates(candidates[j].value);
        }
        if (top) {
            best = i;
            break;
        }
    }
    if (!best) {
        bool all_neg = true;
        for (const Candidate& c : candidates) all_neg = all_neg && c.neg_inf;
        if (all_neg) {
            result.unbounded = true;
            return result;
        }
        throw std::runtime_error(
            "candidates are not comparable symbolically; supply aux_log values");
    }
    const Candidate& c = candidates[*best];
    result.value = c.value;
    result.where = c.where;
    result.arg = c.arg;
    return result;
}

OptResult block_count_instance(int k, const Rat& c) {
    check_k(k, 2);
    const Rat t = rat_pow2(k) - 2; // 2^k - 2
    LogMonomial rising = LogMonomial::var("H", Rat(1) / t) * LogMonomial::var("q", Rat(-1) / t) *
                         LogMonomial::var("M", 1 + (c - k) / t);
    LogMonomial falling = LogMonomial::var("M", 1) * LogMonomial::var("H", -1);
    OptProblem p;
    p.var = "H";
    p.increasing = {rising};
    p.decreasing = {falling};
    p.upper = LogMonomial::var("q", 1) * LogMonomial::var("M", 1); // H <= qM
    return optimize(p);
}

std::pair<Rat, Rat> ap_exponent(int k, const Rat& c) {
    check_k(k, 1);
    if (c < 1) throw ParseError("order must be >= 1");
    const Rat d = rat_pow2(k) - 1; // 2^k - 1
    return {1 - (k - c) / d, Rat(-1) / d};
}

Rat level_crossing_theta(int k, const Rat& c) {
    check_k(k, 1);
    return c + 1 - k - two_pow_minus(k);
}

int best_k_for_modulus(const Rat& c, const Rat& theta) {
    if (c < 1) throw ParseError("order must be >= 1");
    if (theta < 0 || theta > c) throw ParseError("theta must lie in [0, c]");
    for (int k = 1; k <= 64; ++k)
        if (theta > level_crossing_theta(k, c)) return k;
    throw BudgetError("no level k <= 64 admissible");
}

Rat pair_error_exponent(int k, const Rat& c, int r) {
    check_k(k, 2);
    if (r < 2) throw ParseError("tuple rank r must be >= 2");
    if (!(c >= 1)) throw ParseError("order must be >= 1");
    if (!(c < k)) throw ParseError("level must exceed the order (c < k)");
    return r - (k - c) / (rat_pow2(k) - 1);
}

int choose_k_special(const Rat& c) {
    if (c < 1) throw ParseError("order must be >= 1");
    for (int k = 2; k <= 64; ++k) {
        const Rat lo = k - 2 + two_pow_minus(k - 1);
        const Rat hi = k - 1 + two_pow_minus(k);
        if (lo < c && c <= hi) return k;
    }
    throw BudgetError("no level k <= 64 admissible");
}

Rat split_threshold_exponent(int k, const Rat& c) {
    check_k(k, 2);
    return (k - c) / (rat_pow2(k) - 2);
}

Rat split_slack_epsilon(int k, const Rat& c) {
    check_k(k, 2);
    return (k - c) / ((rat_pow2(k) - 2) * (rat_pow2(k) - 1));
}

} // namespace pst
