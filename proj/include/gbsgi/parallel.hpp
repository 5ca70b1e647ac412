#ifndef GBSGI_PARALLEL_HPP
#define GBSGI_PARALLEL_HPP

#include <cstddef>
#include <mutex>
#include <thread>
#include <vector>

#include "gbsgi/events.hpp"

namespace gbsgi {

inline unsigned default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Runs `consume(event)` over every orbit element, distributing batches to
// `workers` threads. `consume` must reduce into thread-local state whose
// merge is associative and commutative (integer sums, multiset unions), so
// the result is independent of scheduling. `make_state` builds one local
// state per worker; `merge` folds them under a lock.
template <typename State, typename MakeState, typename Consume, typename Merge>
State parallel_orbit_reduce(const DetectionEvent& representative,
                            unsigned workers, MakeState make_state,
                            Consume consume, Merge merge) {
    State result = make_state();
    if (workers <= 1) {
        OrbitElementStream stream(representative);
        DetectionEvent n;
        while (stream.next(n)) consume(result, n);
        return result;
    }

    constexpr std::size_t kBatch = 2048;
    OrbitElementStream stream(representative);
    std::mutex stream_mutex, result_mutex;
    auto work = [&]() {
        State local = make_state();
        std::vector<DetectionEvent> batch;
        batch.reserve(kBatch);
        for (;;) {
            batch.clear();
            {
                std::lock_guard lock(stream_mutex);
                DetectionEvent n;
                while (batch.size() < kBatch && stream.next(n)) batch.push_back(n);
            }
            if (batch.empty()) break;
            for (const auto& n : batch) consume(local, n);
        }
        std::lock_guard lock(result_mutex);
        merge(result, local);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return result;
}

}  // namespace gbsgi

#endif
