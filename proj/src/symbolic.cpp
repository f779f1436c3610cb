#include "lyapsft/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lyapsft/errors.hpp"

namespace lyapsft {

namespace {

long long floor_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

bool cyclic_word_admissible(const TransitionSystem& system, std::span<const Symbol> word) {
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] >= system.alphabet_size()) return false;
        if (!system.allows(word[k], word[(k + 1) % word.size()])) return false;
    }
    return true;
}

} // namespace

TransitionSystem::TransitionSystem(std::vector<std::string> labels, BoolMatrix allowed)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw ValidationError("transition system: empty alphabet");
    if (allowed.size() != n) throw ValidationError("transition system: matrix has " + std::to_string(allowed.size()) +
                                                   " rows, expected " + std::to_string(n));
    allowed_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (allowed[i].size() != n)
            throw ValidationError("transition system: row " + std::to_string(i + 1) + " has length " +
                                  std::to_string(allowed[i].size()) + ", expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) allowed_[i * n + j] = allowed[i][j] ? 1 : 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels_[i] == labels_[j]) throw ValidationError("transition system: duplicate label '" + labels_[i] + "'");
        if (labels_[i].empty() || labels_[i].find(' ') != std::string::npos)
            throw ValidationError("transition system: labels must be nonempty and contain no spaces");
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool out = false;
        bool in = false;
        for (std::size_t j = 0; j < n; ++j) {
            out = out || allowed_[i * n + j];
            in = in || allowed_[j * n + i];
        }
        if (!out || !in)
            throw ValidationError("transition system: symbol '" + labels_[i] +
                                  "' has no " + (out ? "incoming" : "outgoing") + " transition (prune first)");
    }
}

PruneResult TransitionSystem::prune(const RawSystem& raw) {
    const std::size_t n = raw.labels.size();
    if (raw.allowed.size() != n) throw ValidationError("transition system: matrix row count does not match alphabet");
    for (std::size_t i = 0; i < n; ++i)
        if (raw.allowed[i].size() != n)
            throw ValidationError("transition system: row " + std::to_string(i + 1) + " has length " +
                                  std::to_string(raw.allowed[i].size()) + ", expected " + std::to_string(n));

    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            bool out = false;
            bool in = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (!alive[j]) continue;
                out = out || raw.allowed[i][j];
                in = in || raw.allowed[j][i];
            }
            if (!out || !in) {
                alive[i] = false;
                changed = true;
            }
        }
    }

    PruneResult result;
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) result.kept.push_back(i);
        else result.removed.push_back(raw.labels[i]);
    }
    if (result.kept.empty()) return result;

    std::vector<std::string> labels;
    BoolMatrix allowed;
    for (std::size_t i : result.kept) {
        labels.push_back(raw.labels[i]);
        std::vector<bool> row;
        for (std::size_t j : result.kept) row.push_back(raw.allowed[i][j]);
        allowed.push_back(std::move(row));
    }
    result.system.emplace(std::move(labels), std::move(allowed));
    return result;
}

TransitionSystem TransitionSystem::full_shift(std::size_t alphabet_size) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < alphabet_size; ++i) labels.push_back(std::to_string(i + 1));
    return TransitionSystem(std::move(labels), BoolMatrix(alphabet_size, std::vector<bool>(alphabet_size, true)));
}

TransitionSystem TransitionSystem::golden_mean() {
    return TransitionSystem({"1", "2"}, {{true, true}, {true, false}});
}

BoolMatrix TransitionSystem::matrix() const {
    const std::size_t n = labels_.size();
    BoolMatrix m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = allowed_[i * n + j] != 0;
    return m;
}

std::optional<Symbol> TransitionSystem::symbol_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<Symbol>(i);
    return std::nullopt;
}

Word TransitionSystem::parse_word(std::string_view text) const {
    Word word;
    auto push = [&](std::string_view token) {
        auto s = symbol_of(token);
        if (!s) throw InputError("unknown symbol '" + std::string(token) + "'");
        word.push_back(*s);
    };
    if (text.find(' ') == std::string_view::npos &&
        std::all_of(labels_.begin(), labels_.end(), [](const std::string& l) { return l.size() == 1; })) {
        for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
        return word;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        if (end > pos) push(text.substr(pos, end - pos));
        pos = end;
    }
    return word;
}

std::string TransitionSystem::format_word(std::span<const Symbol> word) const {
    const bool compact =
        std::all_of(labels_.begin(), labels_.end(), [](const std::string& l) { return l.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += word[i] < labels_.size() ? labels_[word[i]] : "?";
    }
    return out;
}

bool is_primitive(std::span<const Symbol> word) {
    const std::size_t n = word.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) repeats = word[i] == word[i - d];
        if (repeats) return false;
    }
    return n > 0;
}

std::size_t least_rotation(std::span<const Symbol> word) {
    const std::size_t n = word.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            Symbol a = word[(k + i) % n];
            Symbol b = word[(best + i) % n];
            if (a != b) {
                if (a < b) best = k;
                break;
            }
        }
    }
    return best;
}

PeriodicOrbit::PeriodicOrbit(Word word) : word_(std::move(word)) {
    if (word_.empty()) throw InputError("periodic orbit: empty word");
    if (!is_primitive(word_)) throw InputError("periodic orbit: word is a proper power");
    if (least_rotation(word_) != 0) throw InputError("periodic orbit: word is not the least rotation");
}

PeriodicOrbit PeriodicOrbit::from_cycle(std::span<const Symbol> cycle) {
    if (cycle.empty()) throw InputError("periodic orbit: empty word");
    std::size_t k = least_rotation(cycle);
    Word w(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) w[i] = cycle[(k + i) % cycle.size()];
    return PeriodicOrbit(std::move(w));
}

Symbol PeriodicOrbit::at(long long n) const {
    return word_[static_cast<std::size_t>(floor_mod(n, static_cast<long long>(word_.size())))];
}

Word PeriodicOrbit::rotated(std::size_t k) const {
    Word w(word_.size());
    for (std::size_t i = 0; i < word_.size(); ++i) w[i] = word_[(k + i) % word_.size()];
    return w;
}

bool PeriodicOrbit::admissible_in(const TransitionSystem& system) const {
    return cyclic_word_admissible(system, word_);
}

SymbolicPoint::SymbolicPoint(Word left_cycle, Word core, long long core_lo, Word right_cycle)
    : left_(std::move(left_cycle)), core_(std::move(core)), core_lo_(core_lo), right_(std::move(right_cycle)) {
    if (left_.empty() || right_.empty()) throw InputError("symbolic point: cycles must be nonempty");
}

SymbolicPoint SymbolicPoint::periodic(std::span<const Symbol> cycle) {
    Word w(cycle.begin(), cycle.end());
    return SymbolicPoint(w, {}, 0, w);
}

Symbol SymbolicPoint::at(long long n) const {
    if (n < core_lo_) {
        const auto len = static_cast<long long>(left_.size());
        return left_[static_cast<std::size_t>(floor_mod(n - core_lo_, len))];
    }
    if (n > core_hi()) {
        const auto len = static_cast<long long>(right_.size());
        return right_[static_cast<std::size_t>(floor_mod(n - core_hi() - 1, len))];
    }
    return core_[static_cast<std::size_t>(n - core_lo_)];
}

Word SymbolicPoint::window(long long lo, long long hi) const {
    Word w;
    for (long long n = lo; n <= hi; ++n) w.push_back(at(n));
    return w;
}

SymbolicPoint SymbolicPoint::shifted(long long k) const {
    return SymbolicPoint(left_, core_, core_lo_ - k, right_);
}

Word SymbolicPoint::left_cycle_below(long long lo) const {
    const auto len = static_cast<long long>(left_.size());
    Word w(left_.size());
    for (long long i = 0; i < len; ++i)
        w[static_cast<std::size_t>(i)] = at(lo - len + i);
    return w;
}

Word SymbolicPoint::right_cycle_above(long long hi) const {
    const auto len = static_cast<long long>(right_.size());
    Word w(right_.size());
    for (long long i = 0; i < len; ++i)
        w[static_cast<std::size_t>(i)] = at(hi + 1 + i);
    return w;
}

bool SymbolicPoint::admissible_in(const TransitionSystem& system) const {
    if (!cyclic_word_admissible(system, left_) || !cyclic_word_admissible(system, right_)) return false;
    // The seams and the whole core lie inside this window.
    for (long long n = core_lo_ - 1; n <= core_hi() + 1; ++n) {
        Symbol a = at(n - 1);
        Symbol b = at(n);
        if (a >= system.alphabet_size() || b >= system.alphabet_size() || !system.allows(a, b)) return false;
    }
    return true;
}

bool agree_from(const SymbolicPoint& a, const SymbolicPoint& b, long long from) {
    const long long period =
        std::lcm(static_cast<long long>(a.right_cycle().size()), static_cast<long long>(b.right_cycle().size()));
    const long long last = std::max({from, a.core_hi(), b.core_hi()}) + period;
    for (long long n = from; n <= last; ++n)
        if (a.at(n) != b.at(n)) return false;
    return true;
}

bool agree_until(const SymbolicPoint& a, const SymbolicPoint& b, long long until) {
    const long long period =
        std::lcm(static_cast<long long>(a.left_cycle().size()), static_cast<long long>(b.left_cycle().size()));
    const long long first = std::min({until, a.core_lo(), b.core_lo()}) - period;
    for (long long n = first; n <= until; ++n)
        if (a.at(n) != b.at(n)) return false;
    return true;
}

bool validate_word(const TransitionSystem& system, std::span<const Symbol> word) {
    for (Symbol s : word)
        if (s >= system.alphabet_size())
            throw InputError("validate_word: symbol index " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(system.alphabet_size()));
    for (std::size_t k = 1; k < word.size(); ++k)
        if (!system.allows(word[k - 1], word[k])) return false;
    return true;
}

bool is_transitive(const TransitionSystem& system) {
    const std::size_t n = system.alphabet_size();
    auto reach_all = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                bool edge = forward ? system.allows(static_cast<Symbol>(i), static_cast<Symbol>(j))
                                    : system.allows(static_cast<Symbol>(j), static_cast<Symbol>(i));
                if (edge && !seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    return reach_all(true) && reach_all(false);
}

namespace {

// Fredricksen-Kessler-Maiorana generation of Lyndon words restricted to
// admissible paths. Every prefix of an admissible Lyndon word is an
// admissible prenecklace, so pruning on the path constraint loses nothing.
class LyndonGenerator {
public:
    LyndonGenerator(const TransitionSystem& system, std::size_t length, std::size_t cap, std::size_t already,
                    std::vector<PeriodicOrbit>& out)
        : system_(system), n_(length), k_(system.alphabet_size()), cap_(cap), count_(already), out_(out),
          a_(length + 1, 0) {}

    void run() {
        for (std::size_t first = 0; first < k_; ++first) {
            a_[1] = static_cast<Symbol>(first);
            extend(2, 1);
        }
    }

private:
    void extend(std::size_t t, std::size_t p) {
        if (t > n_) {
            if (p == n_ && system_.allows(a_[n_], a_[1])) {
                if (++count_ > cap_)
                    throw ResourceError("periodic orbit enumeration exceeded cap of " + std::to_string(cap_) +
                                        " orbits");
                out_.emplace_back(Word(a_.begin() + 1, a_.end()));
            }
            return;
        }
        const Symbol prev = a_[t - 1];
        const Symbol copy = a_[t - p];
        if (system_.allows(prev, copy)) {
            a_[t] = copy;
            extend(t + 1, p);
        }
        for (Symbol j = copy + 1; j < k_; ++j) {
            if (!system_.allows(prev, j)) continue;
            a_[t] = j;
            extend(t + 1, t);
        }
    }

    const TransitionSystem& system_;
    std::size_t n_;
    std::size_t k_;
    std::size_t cap_;
    std::size_t count_;
    std::vector<PeriodicOrbit>& out_;
    Word a_;
};

} // namespace

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const TransitionSystem& system, std::size_t max_period,
                                                     std::size_t cap) {
    if (max_period < 1) throw InputError("enumerate_periodic_orbits: max_period must be >= 1");
    std::vector<PeriodicOrbit> orbits;
    for (std::size_t n = 1; n <= max_period; ++n) {
        std::vector<PeriodicOrbit> level;
        LyndonGenerator(system, n, cap, orbits.size(), level).run();
        std::sort(level.begin(), level.end());
        orbits.insert(orbits.end(), level.begin(), level.end());
    }
    return orbits;
}

SymbolicPoint splice_points(const SymbolicPoint& past, const SymbolicPoint& future) {
    if (past.at(0) != future.at(0))
        throw DomainError("splice_points: points disagree at coordinate 0");
    const long long lo = std::min(past.core_lo(), 0LL);
    const long long hi = std::max(future.core_hi(), 0LL);
    Word core;
    for (long long n = lo; n <= 0; ++n) core.push_back(past.at(n));
    for (long long n = 1; n <= hi; ++n) core.push_back(future.at(n));
    return SymbolicPoint(past.left_cycle_below(lo), std::move(core), lo, future.right_cycle_above(hi));
}

DSets d_sets_and_connectivity(const TransitionSystem& system) {
    const std::size_t n = system.alphabet_size();
    DSets result;
    result.sets.resize(n);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (system.allows(static_cast<Symbol>(i), static_cast<Symbol>(j)))
                result.sets[i].push_back(static_cast<Symbol>(j));
        // Members of one D-set are chained trivially; overlapping sets merge components.
        for (std::size_t m = 1; m < result.sets[i].size(); ++m)
            parent[find(result.sets[i][m])] = find(result.sets[i][0]);
    }
    const std::size_t root = find(0);
    result.connected = true;
    for (std::size_t j = 1; j < n; ++j) result.connected = result.connected && find(j) == root;
    return result;
}

std::vector<Symbol> symbol_map(const TransitionSystem& sub, const TransitionSystem& super) {
    std::vector<Symbol> map;
    for (const auto& label : sub.labels()) {
        auto s = super.symbol_of(label);
        if (!s) throw ValidationError("embedding: symbol '" + label + "' of the sub-system is not in the super-system");
        map.push_back(*s);
    }
    return map;
}

bool is_sub_embedding(const SubshiftEmbedding& embedding) {
    PruneResult pruned;
    try {
        pruned = TransitionSystem::prune(embedding.sub);
    } catch (const ValidationError&) {
        return false;
    }
    if (!pruned.system) return false;
    const TransitionSystem& sub = *pruned.system;
    std::vector<Symbol> map;
    for (const auto& label : sub.labels()) {
        auto s = embedding.super.symbol_of(label);
        if (!s) return false;
        map.push_back(*s);
    }
    for (std::size_t i = 0; i < sub.alphabet_size(); ++i)
        for (std::size_t j = 0; j < sub.alphabet_size(); ++j)
            if (sub.allows(static_cast<Symbol>(i), static_cast<Symbol>(j)) && !embedding.super.allows(map[i], map[j]))
                return false;
    return true;
}

TransitionSystem embedded_subsystem(const SubshiftEmbedding& embedding) {
    if (!is_sub_embedding(embedding))
        throw ValidationError("embedding: sub-system is empty or not dominated by the super-system");
    return *TransitionSystem::prune(embedding.sub).system;
}

Word lift_word(std::span<const Symbol> word, std::span<const Symbol> map) {
    Word out;
    out.reserve(word.size());
    for (Symbol s : word) {
        if (s >= map.size()) throw InputError("lift_word: symbol outside sub-alphabet");
        out.push_back(map[s]);
    }
    return out;
}

} // namespace lyapsft
