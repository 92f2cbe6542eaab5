#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pst/rational.hpp"

namespace pst {

// A product of named quantities raised to exact rational powers,
// e.g. M^{11/14} q^{-1/7}. Everything in this module is exact: no floating
// point enters any result.
class LogMonomial {
public:
    LogMonomial() = default; // the constant 1
    static LogMonomial var(const std::string& name, const Rat& e = 1);

    Rat exp_of(const std::string& name) const; // 0 when absent
    void set_exp(const std::string& name, const Rat& e);
    LogMonomial without(const std::string& name) const;

    LogMonomial operator*(const LogMonomial& o) const;
    LogMonomial pow(const Rat& e) const;
    LogMonomial inv() const { return pow(-1); }

    bool is_one() const { return exps_.empty(); }
    const std::map<std::string, Rat>& exps() const { return exps_; }
    std::string str() const;
    bool operator==(const LogMonomial& o) const { return exps_ == o.exps_; }

    // True when this >= o for every assignment of the variables with all
    // values >= 1, i.e. every exponent is >= the matching one in o.
    bool dominates(const LogMonomial& o) const;

private:
    std::map<std::string, Rat> exps_; // zero exponents are never stored
};

// Minimise, over one designated variable ranging in an interval, the maximum
// of a family of monomials that increase in that variable and a family that
// decrease (or ignore it). The infimum of such a max equals the largest of:
// the increasing terms' limits at the left endpoint, the decreasing terms'
// limits at the right endpoint, and the value at each increasing/decreasing
// crossing (crossings count even outside the interval: there they are still
// lower bounds attained in the limit).
struct OptProblem {
    std::string var;
    std::vector<LogMonomial> increasing; // exponent of var > 0
    std::vector<LogMonomial> decreasing; // exponent of var <= 0
    std::optional<LogMonomial> lower;    // left endpoint as a monomial; empty = var -> 0+
    std::optional<LogMonomial> upper;    // right endpoint; empty = var -> infinity
    // Exact log-values for the auxiliary variables. When present, candidates
    // compare as exact rationals (total order); when absent they compare by
    // exponent-wise dominance, valid for all variable values >= 1.
    std::map<std::string, Rat> aux_log;
};

enum class OptWhere { lower_endpoint, upper_endpoint, interior };

struct OptResult {
    bool unbounded = false; // infimum is 0 (log -> -infinity)
    LogMonomial value;
    OptWhere where = OptWhere::interior;
    std::optional<LogMonomial> arg;  // optimal var as a monomial, when meaningful
    std::optional<Rat> value_log;    // exact log of the value (aux_log mode)
    std::optional<Rat> arg_log;      // exact log of the optimal var (aux_log mode)
};

OptResult optimize(const OptProblem& p);

// The block-count optimisation behind the residue error term: minimise over
// H in (0, qM] the max of M H^{-1} and (H q^{-1})^{1/(2^k-2)} M^{1+(c-k)/(2^k-2)}.
// Resolves symbolically to M^{1-(k-c)/(2^k-1)} q^{-1/(2^k-1)}.
OptResult block_count_instance(int k, const Rat& c);

// Exponent pair (e_x, e_q) with e_x = 1 - (k-c)/(2^k-1), e_q = -1/(2^k-1).
std::pair<Rat, Rat> ap_exponent(int k, const Rat& c);

// Smallest level k >= 1 whose error term wins when q = x^theta: the k with
// theta > c + 1 - k - 2^{-k} (k = 1 covers theta near c).
int best_k_for_modulus(const Rat& c, const Rat& theta);

// Log-x exponent where the level-k and level-(k+1) error terms agree:
// c + 1 - k - 2^{-k}.
Rat level_crossing_theta(int k, const Rat& c);

// Error exponent r - (k - c)/(2^k - 1) for the r-tuple count; requires c < k.
Rat pair_error_exponent(int k, const Rat& c, int r);

// The unique k >= 2 with k - 2 + 2^{-(k-1)} < c <= k - 1 + 2^{-k}.
int choose_k_special(const Rat& c);

// Documentation constants of the tuple-count analysis (not consumed by any
// computation): the modulus-threshold exponent (k - c)/(2^k - 2) and the
// slack epsilon = (k - c)/((2^k - 2)(2^k - 1)) that separates the two
// summation regimes.
Rat split_threshold_exponent(int k, const Rat& c);
Rat split_slack_epsilon(int k, const Rat& c);

} // namespace pst
