#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lyapsft {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using BoolMatrix = std::vector<std::vector<bool>>;

// Unvalidated alphabet + 0/1 matrix, as read from a config file.
struct RawSystem {
    std::vector<std::string> labels;
    BoolMatrix allowed;
};

struct PruneResult;

/// Subshift of finite type given by its allowed two-letter words.
///
/// Always held in pruned form: every symbol has an incoming and an outgoing
/// allowed transition, hence the transition graph contains a cycle and the
/// space of bi-infinite admissible sequences is nonempty.
class TransitionSystem {
public:
    TransitionSystem(std::vector<std::string> labels, BoolMatrix allowed);

    /// Repeatedly removes symbols without an incoming or outgoing edge.
    /// Returns std::nullopt in `system` when nothing survives.
    static PruneResult prune(const RawSystem& raw);

    static TransitionSystem full_shift(std::size_t alphabet_size);
    /// Alphabet {1,2} with the word 22 forbidden.
    static TransitionSystem golden_mean();

    std::size_t alphabet_size() const { return labels_.size(); }
    bool allows(Symbol from, Symbol to) const { return allowed_[from * labels_.size() + to] != 0; }
    const std::vector<std::string>& labels() const { return labels_; }
    BoolMatrix matrix() const;

    std::optional<Symbol> symbol_of(std::string_view label) const;
    /// Accepts space-separated labels, or a compact string when every label is one character.
    Word parse_word(std::string_view text) const;
    std::string format_word(std::span<const Symbol> word) const;

    friend bool operator==(const TransitionSystem&, const TransitionSystem&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::uint8_t> allowed_;
};

struct PruneResult {
    std::optional<TransitionSystem> system;
    std::vector<std::string> removed;
    /// kept[i] is the index in the raw alphabet of surviving symbol i.
    std::vector<std::size_t> kept;
};

/// Primitive cyclic word in canonical (lexicographically least) rotation.
class PeriodicOrbit {
public:
    /// Throws InputError unless `word` is nonempty, primitive and canonical.
    explicit PeriodicOrbit(Word word);

    /// Canonical orbit of an arbitrary primitive cyclic word.
    static PeriodicOrbit from_cycle(std::span<const Symbol> cycle);

    const Word& word() const { return word_; }
    std::size_t period() const { return word_.size(); }
    /// Symbol at position n of the bi-infinite periodic sequence.
    Symbol at(long long n) const;
    /// The cycle read starting at position k, i.e. the word of T^k p.
    Word rotated(std::size_t k) const;
    bool admissible_in(const TransitionSystem& system) const;

    friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;
    friend auto operator<=>(const PeriodicOrbit& a, const PeriodicOrbit& b) {
        if (a.word_.size() != b.word_.size()) return a.word_.size() <=> b.word_.size();
        return a.word_ <=> b.word_;
    }

private:
    Word word_;
};

bool is_primitive(std::span<const Symbol> word);
std::size_t least_rotation(std::span<const Symbol> word);

/// Eventually periodic two-sided sequence:
///   ... L L L [core at c_lo..c_hi] R R R ...
/// Positions below c_lo read `left_cycle` backwards from its last symbol,
/// positions above c_hi read `right_cycle` forwards from its first symbol.
class SymbolicPoint {
public:
    SymbolicPoint(Word left_cycle, Word core, long long core_lo, Word right_cycle);

    /// The periodic point with omega_n = cycle[n mod |cycle|].
    static SymbolicPoint periodic(std::span<const Symbol> cycle);

    Symbol at(long long n) const;
    /// Coordinates omega_lo .. omega_hi inclusive.
    Word window(long long lo, long long hi) const;
    /// The point T^k omega, (T^k omega)_n = omega_{n+k}.
    SymbolicPoint shifted(long long k) const;
    bool admissible_in(const TransitionSystem& system) const;

    const Word& left_cycle() const { return left_; }
    const Word& core() const { return core_; }
    const Word& right_cycle() const { return right_; }
    long long core_lo() const { return core_lo_; }
    long long core_hi() const { return core_lo_ + static_cast<long long>(core_.size()) - 1; }

    /// Left cycle rotated so that it continues leftwards from position `lo` (lo <= core_lo).
    Word left_cycle_below(long long lo) const;
    /// Right cycle rotated so that it continues rightwards from position `hi` (hi >= core_hi).
    Word right_cycle_above(long long hi) const;

private:
    Word left_;
    Word core_;
    long long core_lo_;
    Word right_;
};

/// True iff two points agree at every coordinate n >= from (stable side) or n <= from (unstable side).
bool agree_from(const SymbolicPoint& a, const SymbolicPoint& b, long long from);
bool agree_until(const SymbolicPoint& a, const SymbolicPoint& b, long long until);

struct SubshiftEmbedding {
    RawSystem sub;
    TransitionSystem super;
};

struct DSets {
    /// sets[j0] = { j : j0 j allowed }
    std::vector<std::vector<Symbol>> sets;
    bool connected = false;
};

bool validate_word(const TransitionSystem& system, std::span<const Symbol> word);
bool is_transitive(const TransitionSystem& system);

inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;

/// All admissible periodic orbits of period <= max_period, sorted by (period, word).
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const TransitionSystem& system, std::size_t max_period,
                                                     std::size_t cap = kDefaultOrbitCap);

/// Point equal to `past` on n <= 0 and to `future` on n >= 0.
SymbolicPoint splice_points(const SymbolicPoint& past, const SymbolicPoint& future);

DSets d_sets_and_connectivity(const TransitionSystem& system);

bool is_sub_embedding(const SubshiftEmbedding& embedding);

/// The pruned sub-system; throws ValidationError if the embedding is invalid.
TransitionSystem embedded_subsystem(const SubshiftEmbedding& embedding);
/// Index in `super` of every symbol of `sub`, matched by label.
std::vector<Symbol> symbol_map(const TransitionSystem& sub, const TransitionSystem& super);
Word lift_word(std::span<const Symbol> word, std::span<const Symbol> map);

} // namespace lyapsft
