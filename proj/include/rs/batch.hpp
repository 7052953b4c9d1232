#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace rs::batch {

enum class Exec { Serial, OpenMP };

/// Evaluates fn(i) for i in [0, n) into a vector. The serial path is the
/// reference implementation; the OpenMP path writes each slot independently,
/// so both produce bit-identical output for pure fn. The first exception
/// thrown by any item is rethrown after the loop completes.
/// vector<bool> is bit-packed (concurrent slot writes race), so bool results
/// are staged through a byte buffer.
template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn, Exec exec) {
    if constexpr (std::is_same_v<T, bool>) {
        const auto bytes = map_indexed<char>(
            n, [&](std::size_t i) { return static_cast<char>(fn(i)); }, exec);
        return std::vector<bool>(bytes.begin(), bytes.end());
    } else {
        std::vector<T> out(n);
        if (exec == Exec::Serial) {
            for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
            return out;
        }
        std::exception_ptr err;
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(rs_batch_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return out;
    }
}

/// Deterministic reduction in index order, independent of execution mode.
template <class T, class Acc, class Fn, class Reduce>
Acc map_reduce(std::size_t n, Fn&& fn, Acc init, Reduce&& reduce, Exec exec) {
    auto items = map_indexed<T>(n, fn, exec);
    for (std::size_t i = 0; i < n; ++i) init = reduce(std::move(init), items[i]);
    return init;
}

}  // namespace rs::batch
