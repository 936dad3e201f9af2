#ifndef SSEQ_K1_HPP
#define SSEQ_K1_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sseq {

/// 2-adic valuation: the largest e with 2^e dividing n. Throws on 0.
int val2(std::int64_t n);

/// v2(5^j - 1) for j != 0, by the 2-adic logarithm identity
/// v2(5^j - 1) = v2(j) + 2. Brute-forced against modular exponentiation
/// in the test suite.
int val2_of_5pow_minus1(std::int64_t j);

/// Finitely generated module over the 2-adic integers: a multiset of
/// cyclic 2-power orders plus a free rank.
struct TwoLocalGroup {
    std::vector<int> torsion_exponents;  // ascending; each e is a Z/2^e summand
    int free_rank = 0;

    static TwoLocalGroup zero() { return {}; }
    static TwoLocalGroup cyclic(int exponent) { return {{exponent}, 0}; }
    static TwoLocalGroup free(int rank) { return {{}, rank}; }

    TwoLocalGroup& add_cyclic(int exponent);
    TwoLocalGroup direct_sum(const TwoLocalGroup& other) const;

    bool is_zero() const { return torsion_exponents.empty() && free_rank == 0; }
    bool is_finite() const { return free_rank == 0; }
    /// 2^(sum of exponents); throws when the free rank is positive.
    std::uint64_t order() const;

    std::uint64_t coker2_order() const;  // |coker(2 . )|
    std::uint64_t ker2_order() const;    // |ker(2 . )|

    /// Human form, e.g. "Z/32", "Z/2 + Z/4", "Z/2 + Z_2", "0".
    std::string str() const;
    /// Machine form "2^e1+2^e2+...+Z2^rank", "0" when trivial.
    std::string machine_str() const;

    bool operator==(const TwoLocalGroup&) const = default;
};

/// Homotopy of 2-completed KO in degree i, with the Adams operation psi^5
/// recorded through psi5_exponent: on a free summand psi^5 acts as
/// multiplication by 5^psi5_exponent; on the exponent-1 torsion in degrees
/// 1, 2 mod 8 the action is trivial. Groups have period 8.
struct KOEntry {
    TwoLocalGroup group;
    std::optional<std::int64_t> psi5_exponent;
};

KOEntry ko_homotopy(std::int64_t i);

/// Homotopy of the K(1)-local sphere, assembled from the fixed-point
/// fibration against (1 - psi^5) on 2-completed KO. The order-2 extension
/// in degrees 1 mod 8 is split: a nonsplit extension would force an eta
/// multiple of the generator to vanish, and it does not.
TwoLocalGroup k1_sphere(std::int64_t i);

/// Order of the middle term of ... -> lower --2--> lower -> middle ->
/// upper --2--> upper -> ...: |coker(2 on lower)| * |ker(2 on upper)|.
std::uint64_t les_mult2_order(const TwoLocalGroup& lower, const TwoLocalGroup& upper);

/// Orders of the K(1)-local mod-2 Moore spectrum homotopy by residue
/// mod 8, in the v1-periodic (large-degree) range.
std::array<std::uint64_t, 8> moore_orders();

/// Group structure with the extension problem each entry resolved. The
/// resolutions are recorded data, not inference: no hidden-extension
/// search happens here.
struct MooreEntry {
    TwoLocalGroup group;
    std::string extension_note;
};

std::array<MooreEntry, 8> moore_groups();

/// Necessary order bound from a three-term exact sequence
/// left -> middle -> right: |middle| <= |left| * |right|.
bool les_order_bound(std::uint64_t left, std::uint64_t middle, std::uint64_t right);

}  // namespace sseq

#endif
