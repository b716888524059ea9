#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qseries/qexpr.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* One of the studied coefficient families: g2, g3, g4 (overpartition times
 * phi(q^k)), and h, t, m, r, s. Each carries three independent evaluation
 * routes that must agree at every truncation order:
 *   - the defining sum (a q-hypergeometric sum, or the bilateral theta
 *     route for the g_k),
 *   - the displayed infinite-product form, and
 *   - the eta quotient. */
struct NamedSeries {
    std::string id;
    std::int64_t phi_scale = 0; /* k for the g_k family, else 0 */
    QExprPtr eta_form;
    QExprPtr product_form; /* Pochhammer-product expression */

    Series sum_side(std::int64_t N, Ring ring = Ring::exact()) const;
    Series product_side(std::int64_t N, Ring ring = Ring::exact()) const;
    Series eta_side(std::int64_t N, Ring ring = Ring::exact()) const;
};

const NamedSeries &named_series(const std::string &id);
const std::vector<std::string> &named_series_ids();

} // namespace qseries
