#include "qseries/qexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace qseries {

QExprPtr qx_int(long v) {
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Integer;
    e->ivalue = v;
    return e;
}

QExprPtr qx_mono(std::int64_t ex) {
    if (ex < 0)
        throw std::invalid_argument("monomial exponent must be >= 0");
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Monomial;
    e->mono_exp = ex;
    return e;
}

QExprPtr qx_eta(std::int64_t n) {
    if (n < 1)
        throw std::invalid_argument("eta index must be >= 1");
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Eta;
    e->eta_n = n;
    return e;
}

QExprPtr qx_theta(const ThetaAtom &t) {
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Theta;
    e->theta = t;
    return e;
}

QExprPtr qx_poch(const PochhammerFactor &f) {
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Pochhammer;
    e->poch = f;
    return e;
}

QExprPtr qx_prod(std::vector<QExprPtr> factors) {
    if (factors.size() == 1)
        return factors[0];
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Product;
    e->factors = std::move(factors);
    return e;
}

QExprPtr qx_div(QExprPtr num, QExprPtr den) {
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Quotient;
    e->num = std::move(num);
    e->den = std::move(den);
    return e;
}

QExprPtr qx_pow(QExprPtr base, std::int64_t ex) {
    if (ex < 1)
        throw std::invalid_argument("power exponent must be >= 1");
    if (ex == 1)
        return base;
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Power;
    e->base = std::move(base);
    e->exponent = ex;
    return e;
}

QExprPtr qx_sum(std::vector<std::pair<int, QExprPtr>> terms) {
    if (terms.size() == 1 && terms[0].first > 0)
        return terms[0].second;
    auto e = std::make_shared<QExpr>();
    e->kind = QExpr::Kind::Sum;
    e->terms = std::move(terms);
    return e;
}

/* ---------------------------------------------------------------- parser */

namespace {

class Parser {
  public:
    explicit Parser(const std::string &text) : s_(text) {}

    QExprPtr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("trailing input");
        return e;
    }

  private:
    const std::string &s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(pos_, msg + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }

    std::int64_t parse_int() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (std::int64_t(1) << 40))
                fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    /* ('-')? 'q^' integer -> (sign, exponent) */
    std::pair<int, std::int64_t> parse_signedmono() {
        int sign = eat('-') ? -1 : 1;
        if (peek() != 'q')
            fail("expected 'q'");
        ++pos_;
        expect('^');
        return {sign, parse_int()};
    }

    std::string parse_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    QExprPtr parse_atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = parse_int();
            return qx_int(static_cast<long>(v));
        }
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            expect(')');
            return e;
        }
        if (c == 'q') {
            ++pos_;
            expect('^');
            return qx_mono(parse_int());
        }
        if (c == 'l') {
            ++pos_;
            return qx_eta(parse_int());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t word_pos = pos_;
            std::string word = parse_word();
            if (word == "phi" || word == "psi") {
                expect('(');
                if (peek() != 'q')
                    fail("expected 'q'");
                ++pos_;
                expect('^');
                std::int64_t k = parse_int();
                expect(')');
                return qx_theta(word == "phi" ? ThetaAtom::phi(k)
                                              : ThetaAtom::psi(k));
            }
            if (word == "f") {
                expect('(');
                auto [s1, e1] = parse_signedmono();
                expect(',');
                auto [s2, e2] = parse_signedmono();
                expect(')');
                return qx_theta(ThetaAtom::general(s1, e1, s2, e2));
            }
            if (word == "poch") {
                expect('(');
                auto [sg, a] = parse_signedmono();
                expect(';');
                if (peek() != 'q')
                    fail("expected 'q'");
                ++pos_;
                expect('^');
                std::int64_t b = parse_int();
                expect(')');
                std::int64_t len = kInfinite;
                if (eat('_'))
                    len = parse_int();
                return qx_poch(PochhammerFactor{sg, a, b, len});
            }
            pos_ = word_pos;
            fail("unknown identifier '" + word + "'");
        }
        fail("expected atom");
    }

    QExprPtr parse_factor() {
        auto a = parse_atom();
        if (eat('^')) {
            std::int64_t e = parse_int();
            if (e < 1)
                fail("exponent must be >= 1");
            return qx_pow(a, e);
        }
        return a;
    }

    /* Terms normalize to numerator-product / denominator-product form. */
    QExprPtr parse_term() {
        std::vector<QExprPtr> num{parse_factor()};
        std::vector<QExprPtr> den;
        for (;;) {
            if (eat('*'))
                num.push_back(parse_factor());
            else if (eat('/'))
                den.push_back(parse_factor());
            else
                break;
        }
        QExprPtr n = qx_prod(std::move(num));
        if (den.empty())
            return n;
        return qx_div(n, qx_prod(std::move(den)));
    }

    QExprPtr parse_expr() {
        std::vector<std::pair<int, QExprPtr>> terms;
        terms.emplace_back(1, parse_term());
        for (;;) {
            if (eat('+'))
                terms.emplace_back(1, parse_term());
            else if (eat('-'))
                terms.emplace_back(-1, parse_term());
            else
                break;
        }
        return qx_sum(std::move(terms));
    }
};

/* --------------------------------------------------------------- printer */

enum Prec { kSum = 0, kTerm = 1, kPower = 2, kAtom = 3 };

int precedence(const QExpr &e) {
    switch (e.kind) {
    case QExpr::Kind::Sum:
        return kSum;
    case QExpr::Kind::Product:
    case QExpr::Kind::Quotient:
        return kTerm;
    case QExpr::Kind::Power:
        return kPower;
    default:
        return kAtom;
    }
}

void print_rec(const QExprPtr &e, int parent_prec, std::string &out);

void print_wrapped(const QExprPtr &e, int parent_prec, std::string &out) {
    if (precedence(*e) < parent_prec) {
        out += '(';
        print_rec(e, kSum, out);
        out += ')';
    } else {
        print_rec(e, parent_prec, out);
    }
}

std::string mono_text(int sign, std::int64_t e) {
    std::string t = sign < 0 ? "-q^" : "q^";
    t += std::to_string(e);
    return t;
}

void print_rec(const QExprPtr &e, int parent_prec, std::string &out) {
    switch (e->kind) {
    case QExpr::Kind::Integer:
        out += std::to_string(e->ivalue);
        return;
    case QExpr::Kind::Monomial:
        out += mono_text(1, e->mono_exp);
        return;
    case QExpr::Kind::Eta:
        out += "l" + std::to_string(e->eta_n);
        return;
    case QExpr::Kind::Theta:
        switch (e->theta.kind) {
        case ThetaAtom::Kind::Phi:
            out += "phi(q^" + std::to_string(e->theta.scale) + ")";
            return;
        case ThetaAtom::Kind::Psi:
            out += "psi(q^" + std::to_string(e->theta.scale) + ")";
            return;
        case ThetaAtom::Kind::GeneralF:
            out += "f(" + mono_text(e->theta.sign1, e->theta.e1) + "," +
                   mono_text(e->theta.sign2, e->theta.e2) + ")";
            return;
        }
        return;
    case QExpr::Kind::Pochhammer:
        out += "poch(" + mono_text(e->poch.sign, e->poch.a) + ";q^" +
               std::to_string(e->poch.b) + ")";
        if (e->poch.length != kInfinite)
            out += "_" + std::to_string(e->poch.length);
        return;
    case QExpr::Kind::Power:
        print_wrapped(e->base, kAtom, out);
        out += "^" + std::to_string(e->exponent);
        return;
    case QExpr::Kind::Product: {
        bool first = true;
        for (const auto &f : e->factors) {
            if (!first)
                out += "*";
            first = false;
            print_wrapped(f, kPower, out);
        }
        return;
    }
    case QExpr::Kind::Quotient:
        print_wrapped(e->num, kTerm, out);
        out += "/";
        /* The denominator binds as one factor, so anything composite
         * needs parentheses. */
        print_wrapped(e->den, kPower, out);
        return;
    case QExpr::Kind::Sum: {
        bool first = true;
        for (const auto &[sign, t] : e->terms) {
            if (first) {
                if (sign < 0)
                    out += "0 - ";
            } else {
                out += sign < 0 ? " - " : " + ";
            }
            first = false;
            print_wrapped(t, kTerm, out);
        }
        return;
    }
    }
    (void)parent_prec;
}

/* ------------------------------------------------------------- evaluator */

struct FactorPower {
    QExprPtr atom;
    std::int64_t power;
};

void flatten(const QExprPtr &e, std::int64_t power,
             std::vector<FactorPower> &out) {
    switch (e->kind) {
    case QExpr::Kind::Product:
        for (const auto &f : e->factors)
            flatten(f, power, out);
        return;
    case QExpr::Kind::Quotient:
        flatten(e->num, power, out);
        flatten(e->den, -power, out);
        return;
    case QExpr::Kind::Power:
        flatten(e->base, power * e->exponent, out);
        return;
    default:
        out.push_back({e, power});
        return;
    }
}

Series eval_atom(const QExprPtr &e, std::int64_t N, Ring ring) {
    switch (e->kind) {
    case QExpr::Kind::Eta:
        return eta_series(e->eta_n, N, ring);
    case QExpr::Kind::Theta:
        return theta_series(e->theta, N, ring);
    case QExpr::Kind::Pochhammer:
        return pochhammer_series(e->poch, N, ring);
    default:
        return eval_qexpr(e, N, ring);
    }
}

unsigned odd_inverse_mod(unsigned b, unsigned mod) {
    b &= mod - 1;
    for (unsigned x = 1; x < mod; x += 2)
        if ((x * b) % mod == 1)
            return x;
    throw std::invalid_argument("non-unit scalar in denominator");
}

} // namespace

QExprPtr parse_qexpr(const std::string &text) { return Parser(text).run(); }

std::string print_qexpr(const QExprPtr &e) {
    std::string out;
    print_rec(e, kSum, out);
    return out;
}

Series eval_qexpr(const QExprPtr &e, std::int64_t N, Ring ring) {
    if (N < 0)
        throw std::invalid_argument("order must be >= 0");
    if (e->kind == QExpr::Kind::Sum) {
        Series acc = Series::zeros(ring, N);
        for (const auto &[sign, t] : e->terms) {
            Series ts = eval_qexpr(t, N, ring);
            acc = sign > 0 ? add(acc, ts) : sub(acc, ts);
        }
        return acc;
    }

    std::vector<FactorPower> factors;
    flatten(e, 1, factors);

    mpz_class scalar_num = 1, scalar_den = 1;
    std::int64_t shift = 0;
    std::vector<FactorPower> series_factors;
    for (const auto &fp : factors) {
        switch (fp.atom->kind) {
        case QExpr::Kind::Integer: {
            mpz_class v(fp.atom->ivalue);
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(),
                       static_cast<unsigned long>(
                           fp.power > 0 ? fp.power : -fp.power));
            if (fp.power > 0)
                scalar_num *= pw;
            else
                scalar_den *= pw;
            break;
        }
        case QExpr::Kind::Monomial:
            shift += fp.power * fp.atom->mono_exp;
            break;
        default:
            series_factors.push_back(fp);
            break;
        }
    }
    if (shift < 0)
        throw std::invalid_argument("non-unit denominator: net monomial power");
    if (scalar_den == 0)
        throw std::invalid_argument("zero denominator");

    Series acc = Series::constant(ring, N, 1);
    for (const auto &fp : series_factors) {
        if (fp.power <= 0)
            continue;
        Series s = eval_atom(fp.atom, N, ring);
        for (std::int64_t i = 0; i < fp.power; ++i)
            acc = mul(acc, s);
    }
    for (const auto &fp : series_factors) {
        if (fp.power >= 0)
            continue;
        Series s = eval_atom(fp.atom, N, ring);
        for (std::int64_t i = 0; i < -fp.power; ++i)
            acc = div_unit(acc, s);
    }

    if (ring.is_exact()) {
        if (scalar_den == 1) {
            /* no-op */
        } else if (scalar_den == -1) {
            scalar_num = -scalar_num;
        } else {
            throw std::invalid_argument("non-unit scalar in denominator");
        }
        if (scalar_num != 1)
            acc = scalar_mul(acc, scalar_num);
    } else {
        unsigned mod = ring.modulus();
        unsigned dn = mpz_fdiv_ui(scalar_den.get_mpz_t(), mod);
        if ((dn & 1u) == 0)
            throw std::invalid_argument("non-unit scalar in denominator");
        unsigned inv = odd_inverse_mod(dn, mod);
        unsigned nu = mpz_fdiv_ui(scalar_num.get_mpz_t(), mod);
        unsigned c = (nu * inv) % mod;
        if (c != 1)
            acc = scalar_mul(acc, mpz_class(c));
    }

    if (shift > 0)
        acc = acc.shifted_up(shift);
    return acc;
}

} // namespace qseries
