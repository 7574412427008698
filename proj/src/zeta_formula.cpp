#include "rzeta/zeta_formula.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace rzeta {

ZetaFormula::ZetaFormula(long p, std::vector<ZetaTerm> terms) : p_(p) {
    if (!is_prime(p)) throw InvalidPrime("not a prime: " + std::to_string(p));
    std::map<ZZ, RationalFunction> merged;
    for (auto& t : terms) {
        if (t.weight < 1) throw Error("term weight must be a positive integer");
        if (t.shape.denominator().evaluate(QQ(0)) == 0)
            throw ExpansionAtPole("term shape has a pole at 0");
        if (t.shape.is_zero()) continue;
        ZZ m = t.weight;
        long v = valuation(m, p);
        RationalFunction shape = t.shape;
        if (v > 0) {
            // absorb the p-power of m as an X-shift of the shape
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pow_zz(p, static_cast<unsigned long>(v)).get_mpz_t());
            shape = RationalFunction(Polynomial::monomial(QQ(1), static_cast<int>(v)), Polynomial::constant(QQ(1))) * shape;
        }
        auto it = merged.find(m);
        if (it == merged.end())
            merged.emplace(m, shape);
        else
            it->second = it->second + shape;
    }
    for (auto& [m, shape] : merged)
        if (!shape.is_zero()) terms_.push_back({m, shape});
}

QQ ZetaFormula::value_at_negative(long e) const {
    if (e < 1) throw Error("evaluation point must be a negative integer -e, e >= 1");
    QQ x(pow_zz(p_, static_cast<unsigned long>(e)));
    QQ acc(0);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        QQ val;
        try {
            val = terms_[i].shape.evaluate(x);
        } catch (const PoleAtPoint&) {
            throw PoleAtEvaluationPoint(
                "term " + std::to_string(i) + " (m=" + terms_[i].weight.get_str() +
                    ") has a pole at p^" + std::to_string(e),
                static_cast<int>(i));
        }
        acc += QQ(pow_zz(terms_[i].weight, static_cast<unsigned long>(e))) * val;
    }
    return acc;
}

DirichletSlice ZetaFormula::coefficients(long long bound) const {
    DirichletSlice slice;
    slice.prime = p_;
    slice.bound = bound;
    const ZZ bound_z(static_cast<long>(bound));
    for (const auto& term : terms_) {
        if (term.weight > bound_z) continue;
        int r_max = -1;
        ZZ n = term.weight;
        while (n <= bound_z) {
            ++r_max;
            n *= p_;
        }
        std::vector<QQ> c = term.shape.series(r_max);
        ZZ idx = term.weight;
        for (int r = 0; r <= r_max; ++r) {
            if (c[static_cast<std::size_t>(r)] != 0)
                slice.coeffs[idx.get_si()] = c[static_cast<std::size_t>(r)];
            idx *= p_;
        }
    }
    for (const auto& [n, r] : slice.coeffs) {
        if (r.get_den() != 1) slice.integrality_ok = false;
        if (r < 0) slice.nonnegativity_ok = false;
    }
    return slice;
}

VanishingCheck ZetaFormula::vanishing_check() const {
    QQ v = value_at_negative(2);
    return {v, v == 0};
}

ZetaFormula ZetaFormula::scaled(const ZZ& c) const {
    if (c < 1) throw Error("scale factor must be a positive integer");
    std::vector<ZetaTerm> scaled_terms;
    scaled_terms.reserve(terms_.size());
    for (const auto& t : terms_)
        scaled_terms.push_back({t.weight, QQ(c) * t.shape});
    return ZetaFormula(p_, std::move(scaled_terms));
}

TruncationTrace ZetaFormula::padic_truncation(long e, int stages, long precision) const {
    if (stages < 1 || precision < 1) throw Error("stages and precision must be >= 1");
    TruncationTrace trace;
    trace.exact_value = value_at_negative(e);

    std::vector<std::vector<QQ>> series_by_term;
    series_by_term.reserve(terms_.size());
    for (const auto& t : terms_)
        series_by_term.push_back(t.shape.series(stages - 1));

    QQ partial(0);
    long prev = -1;
    bool prev_set = false;
    trace.valuations_nondecreasing = true;
    for (int j = 1; j <= stages; ++j) {
        // stage j retains exactly the indices n = m * p^r with r < j
        int r = j - 1;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const QQ& cr = series_by_term[i][static_cast<std::size_t>(r)];
            if (cr == 0) continue;
            ZZ n = terms_[i].weight * pow_zz(p_, static_cast<unsigned long>(r));
            partial += cr * QQ(pow_zz(n, static_cast<unsigned long>(e)));
        }

        TruncationStage st;
        st.stage = j;
        st.partial_sum = partial;
        if (partial == 0 || valuation(ZZ(partial.get_den()), p_) == 0)
            st.partial_padic = PAdicApprox::from_rational(partial, p_, precision);

        QQ diff = partial - trace.exact_value;
        if (diff == 0) {
            st.difference_valuation = {precision, true};
        } else {
            long v = valuation(diff, p_);
            st.difference_valuation = (v >= precision) ? PadicValuation{precision, true}
                                                       : PadicValuation{v, false};
        }
        long capped = st.difference_valuation.value;
        if (prev_set && capped < prev) trace.valuations_nondecreasing = false;
        prev = capped;
        prev_set = true;
        trace.stages.push_back(std::move(st));
    }
    return trace;
}

bool ZetaFormula::operator==(const ZetaFormula& o) const {
    if (p_ != o.p_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].weight != o.terms_[i].weight || terms_[i].shape != o.terms_[i].shape)
            return false;
    return true;
}

SupportReport support_check(const DirichletSlice& slice, const std::vector<ZZ>& weights, long p) {
    SupportReport report;
    for (const auto& [n, r] : slice.coeffs) {
        if (r == 0) continue;
        bool covered = false;
        for (const ZZ& m : weights) {
            if (m < 1) continue;
            ZZ nn(static_cast<long>(n));
            if (!mpz_divisible_p(nn.get_mpz_t(), m.get_mpz_t())) continue;
            ZZ q = nn / m;
            while (q % p == 0) q /= p;
            if (q == 1) { covered = true; break; }
        }
        if (!covered) report.violations.push_back(n);
    }
    report.pass = report.violations.empty();
    return report;
}

DirichletSlice assemble_from_levels(
    const std::vector<std::pair<int, std::vector<long long>>>& levels, long p) {
    if (!is_prime(p)) throw InvalidPrime("not a prime: " + std::to_string(p));
    DirichletSlice slice;
    slice.prime = p;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].first != static_cast<int>(i) + 1)
            throw MalformedLevels("levels must be consecutive starting at 1");
        for (long long d : levels[i].second) {
            if (d < 1) throw MalformedLevels("character degrees must be positive");
            slice.coeffs[d] += 1;
            slice.bound = std::max(slice.bound, d);
        }
    }
    return slice;
}

// ---------------------------------------------------------------------------
// JSON formula format:
//   { "p": 3, "terms": [ { "m": 1, "num": ["9", "-1"], "den": ["1"] } ] }
// Coefficients are decimal strings in ascending degree, "a/b" permitted.
// ---------------------------------------------------------------------------

namespace {

QQ json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return QQ(static_cast<long>(v.get<long long>()));
    throw InputError("coefficient must be a decimal string or integer");
}

Polynomial json_poly(const nlohmann::json& arr) {
    if (!arr.is_array()) throw InputError("polynomial must be an array of coefficients");
    std::vector<QQ> c;
    c.reserve(arr.size());
    for (const auto& v : arr) c.push_back(json_rational(v));
    return Polynomial(std::move(c));
}

} // namespace

ZetaFormula ZetaFormula::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("formula JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("p") || !j.contains("terms"))
        throw InputError("formula JSON requires fields \"p\" and \"terms\"");
    if (!j["p"].is_number_integer()) throw InputError("\"p\" must be an integer");
    long p = j["p"].get<long>();
    if (!j["terms"].is_array()) throw InputError("\"terms\" must be an array");

    std::vector<ZetaTerm> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("m") || !t.contains("num") || !t.contains("den"))
            throw InputError("each term requires \"m\", \"num\", \"den\"");
        ZZ m;
        if (t["m"].is_number_integer())
            m = ZZ(static_cast<long>(t["m"].get<long long>()));
        else if (t["m"].is_string())
            m = ZZ(t["m"].get<std::string>());
        else
            throw InputError("\"m\" must be an integer or decimal string");
        Polynomial num = json_poly(t["num"]);
        Polynomial den = json_poly(t["den"]);
        if (den.is_zero()) throw InputError("term denominator is the zero polynomial");
        terms.push_back({m, RationalFunction(std::move(num), std::move(den))});
    }
    return ZetaFormula(p, std::move(terms));
}

std::string ZetaFormula::to_json_text() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : terms_) {
        nlohmann::ordered_json jt;
        if (t.weight.fits_slong_p())
            jt["m"] = t.weight.get_si();
        else
            jt["m"] = t.weight.get_str();
        auto poly_strings = [](const Polynomial& poly) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            if (poly.is_zero()) {
                arr.push_back("0");
                return arr;
            }
            for (const QQ& c : poly.coeffs()) arr.push_back(c.get_str());
            return arr;
        };
        jt["num"] = poly_strings(t.shape.numerator());
        jt["den"] = poly_strings(t.shape.denominator());
        j["terms"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

} // namespace rzeta
