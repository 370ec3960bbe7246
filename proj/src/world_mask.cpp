#include "belief/world_mask.hpp"

#include <bit>
#include <cassert>

namespace belief {

namespace {

// Bit patterns for atoms 0..5 inside one 64-world word.
constexpr std::uint64_t kLowAtomPattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::size_t word_count_for(std::size_t atom_count)
{
    const std::size_t worlds = std::size_t{1} << atom_count;
    return (worlds + 63) / 64;
}

} // namespace

WorldMask::WorldMask(std::size_t atom_count, std::uint64_t fill)
    : atom_count_(atom_count), words_(word_count_for(atom_count), fill)
{
    trim();
}

void WorldMask::trim() noexcept
{
    const std::size_t worlds = world_count();
    if (worlds < 64 && !words_.empty())
        words_[0] &= (std::uint64_t{1} << worlds) - 1;
}

WorldMask WorldMask::none(std::size_t atom_count) { return WorldMask(atom_count, 0); }

WorldMask WorldMask::all(std::size_t atom_count) { return WorldMask(atom_count, ~std::uint64_t{0}); }

WorldMask WorldMask::atom(std::size_t atom_count, std::size_t atom_index)
{
    assert(atom_index < atom_count);
    WorldMask m(atom_count, 0);
    if (atom_index < 6) {
        for (auto& w : m.words_)
            w = kLowAtomPattern[atom_index];
    } else {
        const std::size_t shift = atom_index - 6;
        for (std::size_t k = 0; k < m.words_.size(); ++k)
            m.words_[k] = ((k >> shift) & 1u) ? ~std::uint64_t{0} : 0;
    }
    m.trim();
    return m;
}

std::size_t WorldMask::count() const noexcept
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

WorldMask& WorldMask::operator&=(const WorldMask& other) noexcept
{
    assert(atom_count_ == other.atom_count_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] &= other.words_[k];
    return *this;
}

WorldMask& WorldMask::operator|=(const WorldMask& other) noexcept
{
    assert(atom_count_ == other.atom_count_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] |= other.words_[k];
    return *this;
}

WorldMask WorldMask::complement() const
{
    WorldMask m = *this;
    for (auto& w : m.words_)
        w = ~w;
    m.trim();
    return m;
}

} // namespace belief
