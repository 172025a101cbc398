#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "qnet/errors.hpp"

namespace qnet {

/// Item identifier. Ids handed out by add_item() are sequential; nets built
/// by revealing a hidden graph reuse that graph's node ids instead.
using ItemId = std::uint32_t;

/// Counts of binary answers for one question. The uniform prior makes the
/// Beta posterior (alpha, beta) = (n_yes + 1, n_no + 1) and the smoothed
/// 'yes' proportion (n_yes + 1) / (N + 2), which never hits 0 or 1.
///
/// Extending to C answer categories would replace the two counters with a
/// count vector; everything downstream consumes only alpha/beta/p_yes.
struct AnswerTally {
    std::uint32_t n_yes = 0;
    std::uint32_t n_no = 0;

    std::uint32_t total() const { return n_yes + n_no; }
    double alpha() const { return n_yes + 1.0; }
    double beta() const { return n_no + 1.0; }
    double p_yes() const { return (n_yes + 1.0) / (total() + 2.0); }
};

/// Unordered item pair; canonical form keeps a <= b.
struct QuestionKey {
    ItemId a = 0;
    ItemId b = 0;

    QuestionKey() = default;
    QuestionKey(ItemId u, ItemId v) : a(std::min(u, v)), b(std::max(u, v)) {}

    friend bool operator==(const QuestionKey&, const QuestionKey&) = default;
};

struct QuestionKeyHash {
    std::size_t operator()(const QuestionKey& k) const {
        std::uint64_t packed = (static_cast<std::uint64_t>(k.a) << 32) | k.b;
        // splitmix64 finalizer
        packed ^= packed >> 30;
        packed *= 0xBF58476D1CE4E5B9ULL;
        packed ^= packed >> 27;
        packed *= 0x94D049BB133111EBULL;
        return static_cast<std::size_t>(packed ^ (packed >> 31));
    }
};

struct Question {
    QuestionKey key;
    AnswerTally tally;
    std::uint64_t created_at = 0;  // net clock value when the question entered
};

/// Growing network of items (nodes) and questions (edges between distinct
/// items, at most one per pair). The clock t counts recorded answers; one
/// answer per tick.
///
/// Mutation is single-threaded per net; independent nets may be used from
/// different threads freely.
class QuestionNet {
public:
    QuestionNet() = default;

    /// Adds a fresh item with the smallest id never used before.
    ItemId add_item();

    /// Inserts a specific id if absent (no-op when present). Used when the
    /// item space is dictated from outside, e.g. revealing a hidden graph.
    void ensure_item(ItemId id);

    bool has_item(ItemId id) const { return items_.count(id) != 0; }
    std::size_t num_items() const { return items_.size(); }

    /// All item ids, ascending.
    std::vector<ItemId> items() const;

    /// Number of questions incident to the item.
    std::uint32_t degree(ItemId id) const;

    const std::vector<ItemId>& neighbors(ItemId id) const;

    /// Clock value when the item entered the net (0 for pre-loaded items).
    std::uint64_t item_entry_time(ItemId id) const;

    /// Creates a question with an empty tally, created_at = current clock.
    QuestionKey add_question(ItemId u, ItemId v);

    bool has_question(QuestionKey key) const { return index_.count(key) != 0; }
    const Question& question(QuestionKey key) const;

    /// Records one binary answer and advances the clock. Returns the
    /// updated tally.
    const AnswerTally& record_answer(QuestionKey key, bool yes);

    std::size_t num_questions() const { return questions_.size(); }

    /// Questions in creation order. This vector *is* the creation order;
    /// questions are never removed or reordered.
    const std::vector<Question>& questions() const { return questions_; }

    /// Number of answers recorded so far.
    std::uint64_t clock() const { return clock_; }

    /// Edge-list text format ("# qnet v1"): one `u v n_yes n_no created_at`
    /// line per question in creation order, isolated items in a trailer.
    void save(std::ostream& out) const;
    static QuestionNet load(std::istream& in);

private:
    struct ItemInfo {
        std::vector<ItemId> neighbors;
        std::uint64_t entry_time = 0;
    };

    const ItemInfo& item_info(ItemId id) const;

    std::vector<Question> questions_;  // creation order
    std::unordered_map<QuestionKey, std::uint32_t, QuestionKeyHash> index_;
    std::unordered_map<ItemId, ItemInfo> items_;
    ItemId next_item_id_ = 0;
    std::uint64_t clock_ = 0;
};

}  // namespace qnet
