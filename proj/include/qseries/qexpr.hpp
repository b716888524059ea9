#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qseries/qobjects.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* Expression tree over q-objects. Grammar (whitespace insignificant):
 *
 *   expr       := term (('+'|'-') term)*
 *   term       := factor (('*'|'/') factor)*
 *   factor     := atom ('^' integer)?
 *   atom       := integer | 'q^' integer | 'l' integer
 *              | 'phi(q^' integer ')' | 'psi(q^' integer ')'
 *              | 'f(' signedmono ',' signedmono ')' | '(' expr ')'
 *   signedmono := ('-')? 'q^' integer
 *
 * As an extension past the grammar above, Pochhammer atoms built in code
 * print and re-parse as poch(signedmono;q^b) with an optional _n length
 * suffix, so every tree round-trips through its printed form. */
struct QExpr;
using QExprPtr = std::shared_ptr<const QExpr>;

struct QExpr {
    enum class Kind {
        Integer,
        Monomial,
        Eta,
        Theta,
        Pochhammer,
        Product,
        Quotient,
        Power,
        Sum
    };

    Kind kind = Kind::Integer;
    long ivalue = 0;                      /* Integer */
    std::int64_t mono_exp = 0;            /* Monomial q^s */
    std::int64_t eta_n = 1;               /* Eta l_n */
    ThetaAtom theta;                      /* Theta */
    PochhammerFactor poch{1, 1, 1};       /* Pochhammer */
    std::vector<QExprPtr> factors;        /* Product */
    QExprPtr num, den;                    /* Quotient */
    QExprPtr base;                        /* Power */
    std::int64_t exponent = 1;            /* Power */
    std::vector<std::pair<int, QExprPtr>> terms; /* Sum, sign = +-1 */
};

QExprPtr qx_int(long v);
QExprPtr qx_mono(std::int64_t e);
QExprPtr qx_eta(std::int64_t n);
QExprPtr qx_theta(const ThetaAtom &t);
QExprPtr qx_poch(const PochhammerFactor &f);
QExprPtr qx_prod(std::vector<QExprPtr> factors);
QExprPtr qx_div(QExprPtr num, QExprPtr den);
QExprPtr qx_pow(QExprPtr base, std::int64_t e);
QExprPtr qx_sum(std::vector<std::pair<int, QExprPtr>> terms);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string &what)
        : std::runtime_error(what), position(pos) {}
};

QExprPtr parse_qexpr(const std::string &text);
std::string print_qexpr(const QExprPtr &e);

/* Evaluate to a truncated series at order N over the given ring. Quotients
 * require unit-constant-term denominators. Products and quotients are
 * evaluated factor by factor so that sparse atoms (eta, theta, monomials)
 * keep the cost near O(N sqrt N) instead of O(N^2). */
Series eval_qexpr(const QExprPtr &e, std::int64_t N, Ring ring = Ring::exact());

} // namespace qseries
