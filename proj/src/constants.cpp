#include "qw/constants.hpp"

#include "qw/multipoly.hpp"

namespace qw {

namespace {

void check(int n, int s) {
    if (n < 1 || s < 0)
        throw Error(ErrorKind::OutOfRange, "constants need n >= 1, s >= 0");
}

} // namespace

Integer tight_size(int n, int s) {
    check(n, s);
    return binomial(s + n - 1, s);
}

Rational q_norm(int n, int s) {
    check(n, s);
    Rational r = 1;
    for (int j = 0; j < s; ++j)
        r *= Rational(2 * j + n, 2 * j + 1);
    r.canonicalize();
    return r;
}

Rational tight_value(int n, int s) {
    Rational r = q_norm(n, s) / Rational(tight_size(n, s));
    r.canonicalize();
    return r;
}

Integer laplacian_power_constant(int n, int s) {
    check(n, s);
    Integer r = Integer(1) << s;
    r *= factorial(s);
    for (int j = 0; j < s; ++j)
        r *= n + 2 * j;
    return r;
}

Integer a_constant(int n, int s, int k) {
    Integer r = 1;
    for (int j = 1; j <= k; ++j)
        r *= n + 2 * (s - j);
    return r;
}

} // namespace qw
