#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace belief {

// Set of worlds (full truth assignments) of an n-atom model, one bit per
// world.  World index w assigns atom i the value of bit i of w.  Bits past
// the last world are always zero.
class WorldMask {
public:
    WorldMask() = default;

    static WorldMask none(std::size_t atom_count);
    static WorldMask all(std::size_t atom_count);
    static WorldMask atom(std::size_t atom_count, std::size_t atom_index);

    std::size_t atom_count() const noexcept { return atom_count_; }
    std::size_t world_count() const noexcept { return std::size_t{1} << atom_count_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool test(std::size_t world) const noexcept
    {
        return (words_[world / 64] >> (world % 64)) & 1u;
    }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    WorldMask& operator&=(const WorldMask& other) noexcept;
    WorldMask& operator|=(const WorldMask& other) noexcept;
    WorldMask complement() const;

    friend WorldMask operator&(WorldMask a, const WorldMask& b) noexcept { return a &= b; }
    friend WorldMask operator|(WorldMask a, const WorldMask& b) noexcept { return a |= b; }
    friend WorldMask operator~(const WorldMask& a) { return a.complement(); }
    friend bool operator==(const WorldMask&, const WorldMask&) = default;

private:
    WorldMask(std::size_t atom_count, std::uint64_t fill);
    void trim() noexcept;

    std::size_t atom_count_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace belief
