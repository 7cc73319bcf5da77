#ifndef WPC_HISTORY_HPP
#define WPC_HISTORY_HPP

#include <cmath>
#include <cstddef>
#include <deque>

#include "wpc/errors.hpp"

namespace wpc {

/// Newest-first ring of the last `Depth` time levels. `Level` must expose a time stamp `t`.
template <class Level, std::size_t Depth = 3>
class TimeHistory {
public:
    static constexpr std::size_t depth = Depth;

    TimeHistory() = default;
    explicit TimeHistory(Level initial) { push(std::move(initial)); }

    void push(Level level) {
        levels_.push_front(std::move(level));
        if (levels_.size() > Depth) levels_.pop_back();
    }

    /// back(0) is the newest level, back(1) the one before, ...
    const Level& back(std::size_t i = 0) const {
        if (i >= levels_.size()) throw InsufficientHistory(i + 1, levels_.size());
        return levels_[i];
    }
    Level& newest() { return levels_.front(); }
    const Level& newest() const { return levels_.front(); }

    std::size_t size() const { return levels_.size(); }
    bool empty() const { return levels_.empty(); }

    /// Spacing of the newest `levels` stamps; throws if they are not uniform.
    double spacing(std::size_t levels) const {
        if (levels_.size() < levels) throw InsufficientHistory(levels, levels_.size());
        const double dt = levels_[0].t - levels_[1].t;
        for (std::size_t i = 1; i + 1 < levels; ++i) {
            const double d = levels_[i].t - levels_[i + 1].t;
            if (std::abs(d - dt) > 1e-9 * std::abs(dt)) throw SimError("non-uniform history spacing");
        }
        if (!(dt > 0.0)) throw SimError("history time stamps must increase");
        return dt;
    }

private:
    std::deque<Level> levels_;
};

/// k-th backward difference (k = 0, 1, 2) of the field selected by `get` at the newest level:
/// first-order one-sided over two levels for k = 1, second difference over three for k = 2.
template <class Level, std::size_t Depth, class Get>
auto backward_difference(const TimeHistory<Level, Depth>& h, int k, Get get) {
    using FieldT = std::decay_t<decltype(get(h.back(0)))>;
    if (k == 0) return FieldT(get(h.back(0)));
    if (k == 1) {
        const double dt = h.spacing(2);
        return FieldT((get(h.back(0)) - get(h.back(1))) * (1.0 / dt));
    }
    if (k == 2) {
        const double dt = h.spacing(3);
        FieldT d = get(h.back(0)) - 2.0 * get(h.back(1));
        d += get(h.back(2));
        return FieldT(d * (1.0 / (dt * dt)));
    }
    throw SimError("only time derivatives of order 0..2 are reconstructed");
}

} // namespace wpc

#endif
