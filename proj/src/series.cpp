#include "qseries/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace qseries {

namespace {

/* Above this many coefficients, dense multiplication switches from the
 * schoolbook convolution to Karatsuba. */
constexpr std::int64_t kKaratsubaThreshold = 8192;

void require(bool ok, const char *msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

unsigned inverse_mod_2k(unsigned b0, unsigned k) {
    unsigned mod = 1u << k;
    for (unsigned x = 1; x < mod; x += 2)
        if ((x * b0) % mod == 1)
            return x;
    throw std::invalid_argument("non-unit constant term");
}

/* ---- Karatsuba over uint64 with wraparound arithmetic. Since 2^k divides
 * 2^64, reducing the wrapped result mod 2^k gives the exact residue. ---- */

std::vector<std::uint64_t> kara_u64(const std::vector<std::uint64_t> &a,
                                    const std::vector<std::uint64_t> &b) {
    const std::size_t na = a.size(), nb = b.size();
    std::vector<std::uint64_t> out(na + nb - 1, 0);
    if (std::min(na, nb) <= 64) {
        for (std::size_t i = 0; i < na; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < nb; ++j)
                out[i + j] += a[i] * b[j];
        }
        return out;
    }
    const std::size_t h = (std::max(na, nb) + 1) / 2;
    auto lo = [&](const std::vector<std::uint64_t> &v) {
        return std::vector<std::uint64_t>(v.begin(),
                                          v.begin() + std::min(h, v.size()));
    };
    auto hi = [&](const std::vector<std::uint64_t> &v) {
        if (v.size() <= h)
            return std::vector<std::uint64_t>{0};
        return std::vector<std::uint64_t>(v.begin() + h, v.end());
    };
    auto padded_sum = [](const std::vector<std::uint64_t> &x,
                         const std::vector<std::uint64_t> &y) {
        std::vector<std::uint64_t> s(std::max(x.size(), y.size()), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            s[i] += x[i];
        for (std::size_t i = 0; i < y.size(); ++i)
            s[i] += y[i];
        return s;
    };
    auto a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    auto z0 = kara_u64(a0, b0);
    auto z2 = kara_u64(a1, b1);
    auto z1 = kara_u64(padded_sum(a0, a1), padded_sum(b0, b1));
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] -= z2[i];
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i)
        if (i + h < out.size())
            out[i + h] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        if (i + 2 * h < out.size())
            out[i + 2 * h] += z2[i];
    return out;
}

std::vector<mpz_class> kara_mpz(const std::vector<mpz_class> &a,
                                const std::vector<mpz_class> &b) {
    const std::size_t na = a.size(), nb = b.size();
    std::vector<mpz_class> out(na + nb - 1);
    if (std::min(na, nb) <= 32) {
        for (std::size_t i = 0; i < na; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < nb; ++j)
                if (b[j] != 0)
                    out[i + j] += a[i] * b[j];
        }
        return out;
    }
    const std::size_t h = (std::max(na, nb) + 1) / 2;
    auto lo = [&](const std::vector<mpz_class> &v) {
        return std::vector<mpz_class>(v.begin(),
                                      v.begin() + std::min(h, v.size()));
    };
    auto hi = [&](const std::vector<mpz_class> &v) {
        if (v.size() <= h)
            return std::vector<mpz_class>{mpz_class(0)};
        return std::vector<mpz_class>(v.begin() + h, v.end());
    };
    auto padded_sum = [](const std::vector<mpz_class> &x,
                         const std::vector<mpz_class> &y) {
        std::vector<mpz_class> s(std::max(x.size(), y.size()));
        for (std::size_t i = 0; i < x.size(); ++i)
            s[i] += x[i];
        for (std::size_t i = 0; i < y.size(); ++i)
            s[i] += y[i];
        return s;
    };
    auto a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    auto z0 = kara_mpz(a0, b0);
    auto z2 = kara_mpz(a1, b1);
    auto z1 = kara_mpz(padded_sum(a0, a1), padded_sum(b0, b1));
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] -= z2[i];
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i)
        if (i + h < out.size())
            out[i + h] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        if (i + 2 * h < out.size())
            out[i + 2 * h] += z2[i];
    return out;
}

} // namespace

Ring Ring::mod2k(unsigned k) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("modulus must be 2^k with k in 1..4");
    return Ring{k};
}

std::string Ring::name() const {
    return is_exact() ? "Z" : "Z/" + std::to_string(modulus());
}

Series Series::zeros(Ring ring, std::int64_t order) {
    require(order >= 0, "order must be >= 0");
    Series s;
    s.ring_ = ring;
    s.order_ = order;
    if (ring.is_exact())
        s.zc_.assign(static_cast<std::size_t>(order) + 1, mpz_class(0));
    else
        s.mc_.assign(static_cast<std::size_t>(order) + 1, 0);
    return s;
}

Series Series::constant(Ring ring, std::int64_t order, long value) {
    return monomial(ring, order, 0, value);
}

Series Series::monomial(Ring ring, std::int64_t order, std::int64_t e,
                        long c) {
    require(e >= 0, "exponent must be >= 0");
    Series s = zeros(ring, order);
    if (e <= order) {
        if (ring.is_exact())
            s.zc_[e] = c;
        else {
            long m = ring.modulus();
            s.mc_[e] = static_cast<std::uint8_t>(((c % m) + m) % m);
        }
    }
    return s;
}

Series Series::from_coeffs(std::vector<mpz_class> coeffs) {
    require(!coeffs.empty(), "empty coefficient vector");
    Series s;
    s.ring_ = Ring::exact();
    s.order_ = static_cast<std::int64_t>(coeffs.size()) - 1;
    s.zc_ = std::move(coeffs);
    return s;
}

Series Series::from_residues(unsigned k, std::vector<std::uint8_t> residues) {
    require(!residues.empty(), "empty coefficient vector");
    Ring r = Ring::mod2k(k);
    for (auto &v : residues)
        v &= static_cast<std::uint8_t>(r.modulus() - 1);
    Series s;
    s.ring_ = r;
    s.order_ = static_cast<std::int64_t>(residues.size()) - 1;
    s.mc_ = std::move(residues);
    return s;
}

void Series::check_index(std::int64_t i) const {
    if (i < 0 || i > order_)
        throw std::out_of_range("coefficient index out of range");
}

const mpz_class &Series::zcoeff(std::int64_t i) const {
    check_index(i);
    require(ring_.is_exact(), "zcoeff on modular series");
    return zc_[i];
}

unsigned Series::mcoeff(std::int64_t i) const {
    check_index(i);
    require(!ring_.is_exact(), "mcoeff on exact series");
    return mc_[i];
}

bool Series::coeff_is_zero(std::int64_t i) const {
    check_index(i);
    return ring_.is_exact() ? zc_[i] == 0 : mc_[i] == 0;
}

std::string Series::coeff_str(std::int64_t i) const {
    check_index(i);
    return ring_.is_exact() ? zc_[i].get_str() : std::to_string(mc_[i]);
}

std::int64_t Series::nonzero_count(std::int64_t upto) const {
    if (upto < 0 || upto > order_)
        upto = order_;
    std::int64_t n = 0;
    for (std::int64_t i = 0; i <= upto; ++i)
        if (!coeff_is_zero(i))
            ++n;
    return n;
}

std::vector<std::int64_t> Series::nonzero_indices(std::int64_t upto) const {
    if (upto < 0 || upto > order_)
        upto = order_;
    std::vector<std::int64_t> idx;
    for (std::int64_t i = 0; i <= upto; ++i)
        if (!coeff_is_zero(i))
            idx.push_back(i);
    return idx;
}

Series Series::truncated(std::int64_t new_order) const {
    require(new_order >= 0 && new_order <= order_,
            "truncation order out of range");
    Series s;
    s.ring_ = ring_;
    s.order_ = new_order;
    if (ring_.is_exact())
        s.zc_.assign(zc_.begin(), zc_.begin() + new_order + 1);
    else
        s.mc_.assign(mc_.begin(), mc_.begin() + new_order + 1);
    return s;
}

Series Series::shifted_up(std::int64_t e) const {
    require(e >= 0, "shift must be >= 0");
    Series s = zeros(ring_, order_);
    for (std::int64_t i = e; i <= order_; ++i) {
        if (ring_.is_exact())
            s.zc_[i] = zc_[i - e];
        else
            s.mc_[i] = mc_[i - e];
    }
    return s;
}

bool Series::operator==(const Series &other) const {
    if (ring_ != other.ring_ || order_ != other.order_)
        return false;
    return ring_.is_exact() ? zc_ == other.zc_ : mc_ == other.mc_;
}

Series add(const Series &a, const Series &b) {
    require(a.ring_ == b.ring_, "ring mismatch");
    std::int64_t n = std::min(a.order_, b.order_);
    Series s = Series::zeros(a.ring_, n);
    if (a.ring_.is_exact()) {
        for (std::int64_t i = 0; i <= n; ++i)
            s.zc_[i] = a.zc_[i] + b.zc_[i];
    } else {
        unsigned mask = a.ring_.modulus() - 1;
        for (std::int64_t i = 0; i <= n; ++i)
            s.mc_[i] = (a.mc_[i] + b.mc_[i]) & mask;
    }
    return s;
}

Series sub(const Series &a, const Series &b) {
    require(a.ring_ == b.ring_, "ring mismatch");
    std::int64_t n = std::min(a.order_, b.order_);
    Series s = Series::zeros(a.ring_, n);
    if (a.ring_.is_exact()) {
        for (std::int64_t i = 0; i <= n; ++i)
            s.zc_[i] = a.zc_[i] - b.zc_[i];
    } else {
        unsigned mod = a.ring_.modulus();
        for (std::int64_t i = 0; i <= n; ++i)
            s.mc_[i] = (a.mc_[i] + mod - b.mc_[i]) & (mod - 1);
    }
    return s;
}

Series negate(const Series &a) {
    Series z = Series::zeros(a.ring(), a.order());
    return sub(z, a);
}

Series scalar_mul(const Series &a, const mpz_class &c) {
    Series s = Series::zeros(a.ring_, a.order_);
    if (a.ring_.is_exact()) {
        for (std::int64_t i = 0; i <= a.order_; ++i)
            s.zc_[i] = a.zc_[i] * c;
    } else {
        unsigned mask = a.ring_.modulus() - 1;
        unsigned cr = mpz_fdiv_ui(c.get_mpz_t(), a.ring_.modulus());
        for (std::int64_t i = 0; i <= a.order_; ++i)
            s.mc_[i] = static_cast<std::uint8_t>((a.mc_[i] * cr) & mask);
    }
    return s;
}

Series mul(const Series &a, const Series &b) {
    require(a.ring_ == b.ring_, "ring mismatch");
    const std::int64_t n = std::min(a.order_, b.order_);
    Series s = Series::zeros(a.ring_, n);

    /* Pick the cheapest of: convolving against the sparser operand's
     * support, the schoolbook convolution, or (above the threshold)
     * Karatsuba on the dense coefficient arrays. */
    auto nza = a.nonzero_indices(n);
    auto nzb = b.nonzero_indices(n);
    const double cost_sparse =
        double(std::min(nza.size(), nzb.size())) * double(n + 1);
    const double cost_school = 0.5 * double(n + 1) * double(n + 1);

    if (cost_sparse <= cost_school || n + 1 <= 2) {
        const bool a_sparser = nza.size() <= nzb.size();
        const Series &sp = a_sparser ? a : b;
        const Series &de = a_sparser ? b : a;
        const auto &idx = a_sparser ? nza : nzb;
        if (a.ring_.is_exact()) {
            for (std::int64_t i : idx) {
                const mpz_class &ci = sp.zc_[i];
                for (std::int64_t j = 0; i + j <= n; ++j)
                    if (de.zc_[j] != 0)
                        s.zc_[i + j] += ci * de.zc_[j];
            }
        } else {
            unsigned mask = a.ring_.modulus() - 1;
            for (std::int64_t i : idx) {
                unsigned ci = sp.mc_[i];
                for (std::int64_t j = 0; i + j <= n; ++j)
                    s.mc_[i + j] =
                        static_cast<std::uint8_t>((s.mc_[i + j] + ci * de.mc_[j]) & mask);
            }
        }
        return s;
    }

    if (n + 1 <= kKaratsubaThreshold) {
        if (a.ring_.is_exact()) {
            for (std::int64_t i = 0; i <= n; ++i) {
                if (a.zc_[i] == 0)
                    continue;
                for (std::int64_t j = 0; i + j <= n; ++j)
                    if (b.zc_[j] != 0)
                        s.zc_[i + j] += a.zc_[i] * b.zc_[j];
            }
        } else {
            unsigned mask = a.ring_.modulus() - 1;
            for (std::int64_t i = 0; i <= n; ++i) {
                if (a.mc_[i] == 0)
                    continue;
                unsigned ci = a.mc_[i];
                for (std::int64_t j = 0; i + j <= n; ++j)
                    s.mc_[i + j] =
                        static_cast<std::uint8_t>((s.mc_[i + j] + ci * b.mc_[j]) & mask);
            }
        }
        return s;
    }

    if (a.ring_.is_exact()) {
        std::vector<mpz_class> av(a.zc_.begin(), a.zc_.begin() + n + 1);
        std::vector<mpz_class> bv(b.zc_.begin(), b.zc_.begin() + n + 1);
        auto full = kara_mpz(av, bv);
        for (std::int64_t i = 0; i <= n; ++i)
            s.zc_[i] = std::move(full[i]);
    } else {
        std::vector<std::uint64_t> av(n + 1), bv(n + 1);
        for (std::int64_t i = 0; i <= n; ++i) {
            av[i] = a.mc_[i];
            bv[i] = b.mc_[i];
        }
        auto full = kara_u64(av, bv);
        unsigned mask = a.ring_.modulus() - 1;
        for (std::int64_t i = 0; i <= n; ++i)
            s.mc_[i] = static_cast<std::uint8_t>(full[i] & mask);
    }
    return s;
}

Series div_unit(const Series &a, const Series &b) {
    require(a.ring_ == b.ring_, "ring mismatch");
    const std::int64_t n = std::min(a.order_, b.order_);
    Series c = Series::zeros(a.ring_, n);

    if (a.ring_.is_exact()) {
        require(b.zc_[0] == 1 || b.zc_[0] == -1, "non-unit constant term");
        const bool negate_b0 = b.zc_[0] == -1;
        auto nzb = b.nonzero_indices(n);
        for (std::int64_t k = 0; k <= n; ++k) {
            mpz_class acc = a.zc_[k];
            for (std::int64_t i : nzb) {
                if (i == 0)
                    continue;
                if (i > k)
                    break;
                acc -= b.zc_[i] * c.zc_[k - i];
            }
            c.zc_[k] = negate_b0 ? mpz_class(-acc) : acc;
        }
    } else {
        unsigned mod = a.ring_.modulus(), mask = mod - 1;
        require((b.mc_[0] & 1u) == 1u, "non-unit constant term");
        unsigned inv = inverse_mod_2k(b.mc_[0], a.ring_.mod_bits);
        auto nzb = b.nonzero_indices(n);
        for (std::int64_t k = 0; k <= n; ++k) {
            unsigned acc = a.mc_[k];
            for (std::int64_t i : nzb) {
                if (i == 0)
                    continue;
                if (i > k)
                    break;
                acc = (acc + mod * mod - b.mc_[i] * c.mc_[k - i]) & mask;
            }
            c.mc_[k] = static_cast<std::uint8_t>((acc * inv) & mask);
        }
    }
    return c;
}

Series ap_extract(const Series &a, std::int64_t m, std::int64_t r) {
    require(m >= 1, "progression modulus must be >= 1");
    require(r >= 0 && r < m, "residue out of range 0..m-1");
    require(a.order_ >= r, "series order below residue offset");
    std::int64_t n = (a.order_ - r) / m;
    Series s = Series::zeros(a.ring_, n);
    for (std::int64_t i = 0; i <= n; ++i) {
        if (a.ring_.is_exact())
            s.zc_[i] = a.zc_[m * i + r];
        else
            s.mc_[i] = a.mc_[m * i + r];
    }
    return s;
}

Series substitute_power(const Series &a, std::int64_t k, std::int64_t cap) {
    require(k >= 1, "power must be >= 1");
    std::int64_t n = a.order_ * k;
    if (cap >= 0 && cap < n)
        n = cap;
    Series s = Series::zeros(a.ring_, n);
    for (std::int64_t i = 0; i * k <= n; ++i) {
        if (a.ring_.is_exact())
            s.zc_[i * k] = a.zc_[i];
        else
            s.mc_[i * k] = a.mc_[i];
    }
    return s;
}

Series reduce_mod(const Series &a, unsigned k) {
    require(a.ring_.is_exact(), "reduce_mod requires an exact series");
    Series s = Series::zeros(Ring::mod2k(k), a.order_);
    unsigned mod = 1u << k;
    for (std::int64_t i = 0; i <= a.order_; ++i)
        s.mc_[i] =
            static_cast<std::uint8_t>(mpz_fdiv_ui(a.zc_[i].get_mpz_t(), mod));
    return s;
}

std::optional<std::int64_t> first_mismatch(const Series &a, const Series &b,
                                           std::int64_t upto) {
    require(a.ring_ == b.ring_, "ring mismatch");
    std::int64_t n = std::min(a.order_, b.order_);
    if (upto >= 0)
        n = std::min(n, upto);
    for (std::int64_t i = 0; i <= n; ++i) {
        bool same = a.ring_.is_exact() ? a.zc_[i] == b.zc_[i]
                                       : a.mc_[i] == b.mc_[i];
        if (!same)
            return i;
    }
    return std::nullopt;
}

} // namespace qseries
