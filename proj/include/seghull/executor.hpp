#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace seghull {

// Fixed-size worker pool that runs bulk kernels over index blocks.
//
// The partition of [0, n) into blocks depends on n, the grain and the worker
// count, but every kernel in this library produces results that do not depend
// on the partition, so outputs are identical for any Executor configuration.
// Calls from several threads into the same Executor are serialized.
class Executor {
 public:
  static constexpr std::size_t kDefaultGrain = 4096;

  explicit Executor(std::size_t workers = 1, std::size_t grain = kDefaultGrain);
  ~Executor();

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  std::size_t workers() const noexcept { return workers_; }
  std::size_t grain() const noexcept { return grain_; }

  struct Partition {
    std::size_t blocks = 0;
    std::size_t block_size = 0;

    std::size_t begin(std::size_t block) const noexcept { return block * block_size; }
    std::size_t end(std::size_t block, std::size_t n) const noexcept {
      const std::size_t e = (block + 1) * block_size;
      return e < n ? e : n;
    }
  };

  Partition partition(std::size_t n) const noexcept;

  // Runs body(block) for every block in [0, blocks); returns once all are done.
  // The first exception thrown by any block is rethrown on the calling thread.
  void run(std::size_t blocks, const std::function<void(std::size_t)>& body) const;

  // body(begin, end) over the partition of [0, n).
  template <class Body>
  void for_ranges(std::size_t n, Body&& body) const {
    const Partition part = partition(n);
    run(part.blocks, [&](std::size_t b) { body(part.begin(b), part.end(b, n)); });
  }

  template <class Body>
  void parallel_for(std::size_t n, Body&& body) const {
    for_ranges(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }

 private:
  void worker_loop();
  void drain(std::size_t generation) const;

  std::size_t workers_;
  std::size_t grain_;
  std::vector<std::thread> threads_;

  mutable std::mutex dispatch_mutex_;
  mutable std::mutex mutex_;
  mutable std::condition_variable wake_;
  mutable std::condition_variable done_;
  mutable const std::function<void(std::size_t)>* job_ = nullptr;
  mutable std::size_t job_blocks_ = 0;
  mutable std::size_t next_block_ = 0;
  mutable std::size_t finished_blocks_ = 0;
  mutable std::size_t generation_ = 0;
  mutable std::exception_ptr error_;
  bool stopping_ = false;
};

// Shared single-worker executor; runs everything inline on the caller.
const Executor& sequential_executor();

std::size_t default_worker_count();

}  // namespace seghull
