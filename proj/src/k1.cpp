#include "sseq/k1.hpp"

#include <algorithm>

#include "sseq/errors.hpp"

namespace sseq {

int val2(std::int64_t n) {
    if (n == 0) throw Error(ErrorKind::ZeroValuation, "val2(0) is undefined");
    int e = 0;
    std::uint64_t u = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    while ((u & 1) == 0) {
        u >>= 1;
        ++e;
    }
    return e;
}

int val2_of_5pow_minus1(std::int64_t j) {
    return val2(j) + 2;
}

TwoLocalGroup& TwoLocalGroup::add_cyclic(int exponent) {
    torsion_exponents.insert(
        std::upper_bound(torsion_exponents.begin(), torsion_exponents.end(), exponent), exponent);
    return *this;
}

TwoLocalGroup TwoLocalGroup::direct_sum(const TwoLocalGroup& other) const {
    TwoLocalGroup out = *this;
    for (int e : other.torsion_exponents) out.add_cyclic(e);
    out.free_rank += other.free_rank;
    return out;
}

std::uint64_t TwoLocalGroup::order() const {
    if (free_rank > 0) throw Error(ErrorKind::InvalidParams, "order of an infinite group");
    int total = 0;
    for (int e : torsion_exponents) total += e;
    if (total >= 64) throw Error(ErrorKind::Overflow, "group order exceeds 2^63");
    return std::uint64_t{1} << total;
}

std::uint64_t TwoLocalGroup::coker2_order() const {
    // Every cyclic 2-power summand and every Z_2 contributes one Z/2.
    return std::uint64_t{1} << (torsion_exponents.size() + free_rank);
}

std::uint64_t TwoLocalGroup::ker2_order() const {
    // Multiplication by 2 is injective on the free part.
    return std::uint64_t{1} << torsion_exponents.size();
}

std::string TwoLocalGroup::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int e : torsion_exponents) {
        if (!out.empty()) out += " + ";
        out += "Z/" + std::to_string(std::uint64_t{1} << e);
    }
    for (int i = 0; i < free_rank; ++i) {
        if (!out.empty()) out += " + ";
        out += "Z_2";
    }
    return out;
}

std::string TwoLocalGroup::machine_str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int e : torsion_exponents) {
        if (!out.empty()) out += "+";
        out += "2^" + std::to_string(e);
    }
    if (free_rank > 0) {
        if (!out.empty()) out += "+";
        out += "Z2^" + std::to_string(free_rank);
    }
    return out;
}

KOEntry ko_homotopy(std::int64_t i) {
    std::int64_t residue = ((i % 8) + 8) % 8;
    if (residue == 0 || residue == 4) return {TwoLocalGroup::free(1), i / 2};
    if (residue == 1 || residue == 2) return {TwoLocalGroup::cyclic(1), std::nullopt};
    return {TwoLocalGroup::zero(), std::nullopt};
}

namespace {

/// coker of (1 - psi^5) acting on pi_i KO.
TwoLocalGroup one_minus_psi5_coker(std::int64_t i) {
    KOEntry ko = ko_homotopy(i);
    if (ko.group.is_zero()) return TwoLocalGroup::zero();
    if (ko.group.free_rank == 1) {
        std::int64_t e = *ko.psi5_exponent;
        if (e == 0) return TwoLocalGroup::free(1);  // 1 - psi^5 = 0 on pi_0
        return TwoLocalGroup::cyclic(val2_of_5pow_minus1(e));
    }
    // torsion part: psi^5 acts trivially, so 1 - psi^5 = 0
    return ko.group;
}

/// ker of (1 - psi^5) acting on pi_i KO.
TwoLocalGroup one_minus_psi5_ker(std::int64_t i) {
    KOEntry ko = ko_homotopy(i);
    if (ko.group.is_zero()) return TwoLocalGroup::zero();
    if (ko.group.free_rank == 1)
        return *ko.psi5_exponent == 0 ? TwoLocalGroup::free(1) : TwoLocalGroup::zero();
    return ko.group;
}

}  // namespace

TwoLocalGroup k1_sphere(std::int64_t i) {
    // 0 -> coker(1 - psi^5 on pi_{i+1}KO) -> pi_i -> ker(1 - psi^5 on pi_i KO) -> 0
    TwoLocalGroup sub = one_minus_psi5_coker(i + 1);
    TwoLocalGroup quot = one_minus_psi5_ker(i);
    // The only degree with both parts torsion is i = 1 mod 8, where the
    // extension splits (see header); free quotients split for free.
    return sub.direct_sum(quot);
}

std::uint64_t les_mult2_order(const TwoLocalGroup& lower, const TwoLocalGroup& upper) {
    return lower.coker2_order() * upper.ker2_order();
}

std::array<std::uint64_t, 8> moore_orders() {
    // Any period away from the exceptional bottom works; degrees 8..15 are
    // already generic.
    std::array<std::uint64_t, 8> out{};
    for (std::int64_t residue = 0; residue < 8; ++residue) {
        std::int64_t i = 8 + residue;
        out[static_cast<std::size_t>(residue)] = les_mult2_order(k1_sphere(i), k1_sphere(i - 1));
    }
    return out;
}

std::array<MooreEntry, 8> moore_groups() {
    auto z2 = TwoLocalGroup::cyclic(1);
    auto z4 = TwoLocalGroup::cyclic(2);
    std::array<MooreEntry, 8> out = {{
        {z2.direct_sum(z2),
         "descends by periodicity from the bottom degree, where the cokernel of 2 on Z/2 + Z_2 "
         "leaves no extension problem"},
        {z2.direct_sum(z4),
         "2-extension between the two stacked band classes joins them into a Z/4"},
        {z2.direct_sum(z4),
         "2-extension between the two stacked band classes joins them into a Z/4"},
        {z2.direct_sum(z2),
         "eta-multiplication from the previous stem rules the 2-extension out, so the sequence "
         "splits"},
        {z2, "order 2 forces the group"},
        {TwoLocalGroup::zero(), "trivial"},
        {TwoLocalGroup::zero(), "trivial"},
        {z2, "order 2 forces the group"},
    }};
    return out;
}

bool les_order_bound(std::uint64_t left, std::uint64_t middle, std::uint64_t right) {
    return static_cast<unsigned __int128>(left) * right >= middle;
}

}  // namespace sseq
