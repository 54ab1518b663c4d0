#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rotorlab {

// Deterministic chunked parallel map: [0, total) is split into chunks of
// a fixed size, work(chunk_index, begin, end) fills one slot per chunk,
// and the caller folds the slots in chunk order. Chunk boundaries do not
// depend on the worker count, so results are bitwise identical whether
// run on 1 thread or many.
template <typename Partial, typename Work>
std::vector<Partial> chunked_map(std::uint64_t total, std::uint64_t chunk_size, int threads,
                                 Work&& work) {
    const std::uint64_t n_chunks = chunk_size == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
    std::vector<Partial> slots(static_cast<std::size_t>(n_chunks));
    if (n_chunks == 0) return slots;

    auto run_chunk = [&](std::uint64_t idx) {
        const std::uint64_t begin = idx * chunk_size;
        const std::uint64_t end = std::min(total, begin + chunk_size);
        slots[static_cast<std::size_t>(idx)] = work(idx, begin, end);
    };

    if (threads <= 1 || n_chunks == 1) {
        for (std::uint64_t idx = 0; idx < n_chunks; ++idx) run_chunk(idx);
        return slots;
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t idx = next.fetch_add(1); idx < n_chunks; idx = next.fetch_add(1))
            run_chunk(idx);
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min<std::uint64_t>(threads, n_chunks);
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return slots;
}

}  // namespace rotorlab
