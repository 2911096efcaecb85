#ifndef SETWL_COLOR_TABLE_HPP
#define SETWL_COLOR_TABLE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace setwl {

using Code = std::uint32_t;

// Injective mapping from structural byte keys to dense integer codes,
// assigned in first-seen order. Shared across jointly refined graphs so
// their codes are comparable.
class ColorTable {
public:
    Code intern(const std::string& key) {
        auto [it, inserted] = codes_.try_emplace(key, next_);
        if (inserted)
            ++next_;
        return it->second;
    }

    std::size_t size() const { return codes_.size(); }

private:
    std::unordered_map<std::string, Code> codes_;
    Code next_ = 0;
};

// Length-prefixed concatenation of code integers under a one-byte tag;
// multiset arguments must be sorted by the caller. An empty multiset
// encodes as the reserved zero-length prefix.
class KeyBuilder {
public:
    explicit KeyBuilder(char tag) { key_.push_back(tag); }

    KeyBuilder& code(Code c) {
        append_u32(c);
        return *this;
    }

    KeyBuilder& multiset(const std::vector<Code>& sorted) {
        append_u32(static_cast<std::uint32_t>(sorted.size()));
        for (Code c : sorted)
            append_u32(c);
        return *this;
    }

    // length-prefixed code sequence where the order carries meaning
    KeyBuilder& sequence(const std::vector<Code>& ordered) { return multiset(ordered); }

    KeyBuilder& bytes(const std::vector<std::uint8_t>& data) {
        append_u32(static_cast<std::uint32_t>(data.size()));
        key_.append(data.begin(), data.end());
        return *this;
    }

    std::string take() { return std::move(key_); }

private:
    void append_u32(std::uint32_t v) {
        key_.push_back(static_cast<char>(v));
        key_.push_back(static_cast<char>(v >> 8));
        key_.push_back(static_cast<char>(v >> 16));
        key_.push_back(static_cast<char>(v >> 24));
    }

    std::string key_;
};

} // namespace setwl

#endif
