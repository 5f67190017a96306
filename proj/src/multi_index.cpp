#include "fradeco/multi_index.hpp"

#include <cassert>

#include "fradeco/errors.hpp"

namespace fradeco {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long out = 1;
    for (int i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

long long multinomial(int d, const Exponent& a) {
    long long out = 1;
    int rem = d;
    for (int ai : a) {
        out *= binomial(rem, ai);
        rem -= ai;
    }
    assert(rem == 0);
    return out;
}

std::vector<Exponent> index_basis(int n, int d) {
    if (n < 1 || d < 0) throw ShapeMismatchError("index_basis: need n >= 1, d >= 0");
    std::vector<Exponent> out;
    out.reserve(static_cast<size_t>(index_count(n, d)));
    Exponent cur(n, 0);
    // descending lex: recurse with the leading exponent from d down to 0
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

long long index_count(int n, int d) { return binomial(n + d - 1, d); }

int index_position(int n, int d, const Exponent& a) {
    if (static_cast<int>(a.size()) != n) throw ShapeMismatchError("index_position: wrong arity");
    int sum = 0;
    for (int v : a) {
        if (v < 0) throw ShapeMismatchError("index_position: negative exponent");
        sum += v;
    }
    if (sum != d) throw ShapeMismatchError("index_position: |a| != d");
    long long pos = 0;
    int rem = d;
    for (int i = 0; i + 1 < n; ++i) {
        // entries that chose a larger value at slot i come earlier
        for (int v = rem; v > a[i]; --v) {
            pos += index_count(n - i - 1, rem - v);
        }
        rem -= a[i];
    }
    return static_cast<int>(pos);
}

}  // namespace fradeco
