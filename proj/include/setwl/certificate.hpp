#ifndef SETWL_CERTIFICATE_HPP
#define SETWL_CERTIFICATE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "setwl/graph.hpp"

namespace setwl {

// Canonical byte encoding of a colored graph on <= kCertificateMaxNodes
// nodes. Two graphs have equal certificates exactly when a color-preserving
// isomorphism exists between them.
struct Certificate {
    std::vector<std::uint8_t> bytes;

    bool operator==(const Certificate&) const = default;
    auto operator<=>(const Certificate&) const = default;

    std::string hex() const;
};

inline constexpr int kCertificateMaxNodes = 12;

// Lexicographically minimal encoding (sorted color sequence followed by
// the upper-triangle adjacency bits) over all node orderings that respect
// color classes.
Certificate canonical_certificate(const ColoredGraph& g);

} // namespace setwl

#endif
