#pragma once

#include <cstdint>
#include <vector>

namespace exmax::complements {

/// Z_{n_1} x ... x Z_{n_r}; elements are indexed in mixed radix, first coordinate fastest.
class FinAbelianGroup {
public:
    FinAbelianGroup() = default;
    explicit FinAbelianGroup(std::vector<std::uint64_t> orders);

    const std::vector<std::uint64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    /// |T|, or 0 when it does not fit in 63 bits.
    std::uint64_t order() const { return order_; }

    std::vector<std::uint64_t> tuple(std::uint64_t index) const;
    std::uint64_t index(const std::vector<std::uint64_t>& t) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;

private:
    std::vector<std::uint64_t> orders_;
    std::uint64_t order_ = 1;
};

/// Automorphism t -> tW of order dividing m.
struct CyclicAction {
    std::vector<std::vector<std::int64_t>> matrix;
    std::uint64_t order = 1;
};

std::uint64_t apply(const FinAbelianGroup& t, const CyclicAction& w, std::uint64_t element);

/// Throws UsageError unless W is well defined on T, bijective, and W^m acts trivially.
void validate(const FinAbelianGroup& t, const CyclicAction& w);

/// |C_T(w)|, by enumerating T (at most 10^7 elements).
std::uint64_t centralizer_order(const FinAbelianGroup& t, const CyclicAction& w);

/// Part of |C_T(w)| built from primes dividing the order of w.
std::uint64_t complement_class_bound(const FinAbelianGroup& t, const CyclicAction& w);

/// T-classes of complements to T in T:<w>, by explicit multiplication; needs |T| m <= 10^5.
std::uint64_t complement_classes_bruteforce(const FinAbelianGroup& t, const CyclicAction& w);

/// T-conjugacy classes of the coset wT, by explicit multiplication; same size cap.
std::uint64_t coset_classes_bruteforce(const FinAbelianGroup& t, const CyclicAction& w);

}  // namespace exmax::complements
