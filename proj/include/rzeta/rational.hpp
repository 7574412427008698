#pragma once

#include <gmpxx.h>
#include <string>

#include "rzeta/errors.hpp"

namespace rzeta {

using ZZ = mpz_class;
using QQ = mpq_class;

/// Deterministic primality by trial division up to sqrt(n). Desk-scale inputs only.
inline bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline ZZ pow_zz(const ZZ& base, unsigned long exp) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline ZZ pow_zz(long base, unsigned long exp) { return pow_zz(ZZ(base), exp); }

/// Exponent of p in n. Requires n != 0.
inline long valuation(const ZZ& n, long p) {
    if (n == 0) throw Error("valuation of zero is undefined");
    ZZ reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), ZZ(p).get_mpz_t()));
}

/// v_p of a nonzero rational: v_p(num) - v_p(den).
inline long valuation(const QQ& q, long p) {
    if (q == 0) throw Error("valuation of zero is undefined");
    return valuation(ZZ(q.get_num()), p) - valuation(ZZ(q.get_den()), p);
}

/// Parses "a" or "a/b" in base 10, canonicalized. Throws InputError on malformed text.
inline QQ parse_rational(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    std::size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    QQ q;
    if (slash == std::string::npos) {
        if (!digits_ok(s)) throw InputError("malformed integer literal: " + s);
        q = QQ(s);
    } else {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits_ok(num) || !digits_ok(den)) throw InputError("malformed rational literal: " + s);
        q = QQ(s);
        if (q.get_den() == 0) throw InputError("zero denominator in literal: " + s);
    }
    q.canonicalize();
    return q;
}

inline std::string to_string(const QQ& q) { return q.get_str(); }
inline std::string to_string(const ZZ& z) { return z.get_str(); }

} // namespace rzeta
