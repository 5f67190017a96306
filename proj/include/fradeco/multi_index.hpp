#pragma once

#include <cstdint>
#include <vector>

namespace fradeco {

/// An exponent vector a in N^n. Valid tensor indices satisfy |a| = d.
using Exponent = std::vector<int>;

long long binomial(int n, int k);

/// Multinomial coefficient d! / (a_1! a_2! ... a_n!), with |a| = d.
long long multinomial(int d, const Exponent& a);

/// All a in N^n with |a| = d, ordered lexicographically descending in the
/// leading variable: (d,0,...,0) first, (0,...,0,d) last.
std::vector<Exponent> index_basis(int n, int d);

/// Number of exponent vectors, binom(n+d-1, d).
long long index_count(int n, int d);

/// Position of `a` inside index_basis(n, d), computed combinatorially.
int index_position(int n, int d, const Exponent& a);

}  // namespace fradeco
