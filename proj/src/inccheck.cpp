#include "acc/inccheck.hpp"

#include <deque>
#include <map>
#include <set>

namespace acc {

void remove_unreachable(AnswerTable& at, std::vector<DependencyArc>& dat,
                        const std::vector<CallPattern>& s) {
    std::vector<EntryKey> roots;
    for (const auto& c : s) roots.push_back(c.key());
    restrict_to_reachable(at, dat, roots);
}

namespace {

class IncChecker {
public:
    IncChecker(const ConsumerState& state, const Update& u, const IncrementalCertificate& inc)
        : old_(state), u_(u), inc_(inc), lenient_(classify(u) == UpdateClass::Deletion) {}

    IncCheckResult run() {
        IncCheckResult out;
        // Step 1
        p_ = patch(old_.program, u_);
        at_ = old_.at;
        for (const auto& arc : old_.dat) arcs_.emplace(slot_of(arc), arc);

        // Step 2: entries of predicates touched by the update. Entries whose
        // stored answer the increment replaces are checked as well, since
        // nothing else would validate the new claim.
        for (const auto& [key, entry] : old_.at) {
            if (u_.find(key.predicate_key()) || inc_.contains(key)) schedule(key);
        }

        // Step 3
        while (!queue_.empty()) {
            const EntryKey key = queue_.front();
            queue_.pop_front();
            if (checked_.count(key)) continue;
            if (auto r = check_one(key, out.stats)) {
                out.rejection = std::move(r);
                return out;
            }
        }

        // Step 4
        std::vector<DependencyArc> dat;
        for (auto& [slot, arc] : arcs_) dat.push_back(std::move(arc));
        const std::size_t before = at_.size();
        std::vector<CallPattern> queries;
        for (const auto& q : old_.queries) queries.push_back(base_form(p_, q));
        remove_unreachable(at_, dat, queries);
        out.stats.removed = before - at_.size();
        sort_arcs(dat);
        out.state = ConsumerState{std::move(p_), std::move(at_), std::move(dat), std::move(queries)};
        return out;
    }

private:
    void schedule(const EntryKey& key) {
        if (!checked_.count(key) && pending_.insert(key).second) queue_.push_back(key);
    }

    std::optional<Rejection> check_one(const EntryKey& key, IncCheckStats& stats) {
        const Entry* claim = inc_.find(key);
        const bool from_inc = claim != nullptr;
        if (!claim) claim = old_.at.find(key);
        if (!claim) return Rejection{Rejection::Kind::MissingEntry, CallPattern(), std::nullopt, std::nullopt};

        EntryCheck ec = check_entry(p_, claim->call, &inc_, old_.at);
        checked_.insert(key);
        ++stats.rechecked;
        stats.traversals += ec.traversals;
        if (ec.rejection) return ec.rejection;

        const DefValue computed = with_scope(ec.answer, claim->answer.scope());
        const bool ok = lenient_ ? leq(computed, claim->answer) : computed == claim->answer;
        if (!ok) return Rejection{Rejection::Kind::InvalidAnswer, claim->call, computed, claim->answer};

        at_.set(claim->call, claim->answer).checked = true;
        if (from_inc) ++stats.changed;

        // Arcs headed by this entry are replaced by the ones just recorded.
        for (auto it = arcs_.begin(); it != arcs_.end();)
            it = it->first.head == key ? arcs_.erase(it) : std::next(it);
        for (auto& arc : ec.arcs) arcs_[slot_of(arc)] = std::move(arc);

        // Claims read from the increment must be validated themselves.
        for (const auto& c : ec.overlay_calls) schedule(c.key());

        // A changed answer invalidates every entry that consumed it.
        if (from_inc) {
            for (const auto& [slot, arc] : arcs_)
                if (arc.body_key() == key) schedule(slot.head);
        }
        return std::nullopt;
    }

    const ConsumerState& old_;
    const Update& u_;
    const IncrementalCertificate& inc_;
    const bool lenient_;

    Program p_;
    AnswerTable at_;
    std::map<ArcSlot, DependencyArc> arcs_;
    std::deque<EntryKey> queue_;
    std::set<EntryKey> pending_, checked_;
};

}  // namespace

IncCheckResult inc_check(const ConsumerState& state, const Update& u,
                         const IncrementalCertificate& inc) {
    return IncChecker(state, u, inc).run();
}

}  // namespace acc
