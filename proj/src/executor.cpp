#include "seghull/executor.hpp"

#include <algorithm>
#include <utility>

namespace seghull {

Executor::Executor(std::size_t workers, std::size_t grain)
    : workers_(std::max<std::size_t>(workers, 1)), grain_(std::max<std::size_t>(grain, 1)) {
  threads_.reserve(workers_ - 1);
  for (std::size_t i = 1; i < workers_; ++i) threads_.emplace_back([this] { worker_loop(); });
}

Executor::~Executor() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

Executor::Partition Executor::partition(std::size_t n) const noexcept {
  if (n == 0) return {0, 0};
  if (workers_ == 1 || n <= grain_) return {1, n};
  const std::size_t target_blocks = workers_ * 4;
  const std::size_t size = std::max(grain_, (n + target_blocks - 1) / target_blocks);
  return {(n + size - 1) / size, size};
}

void Executor::run(std::size_t blocks, const std::function<void(std::size_t)>& body) const {
  if (blocks == 0) return;
  if (threads_.empty() || blocks == 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }

  std::lock_guard dispatch(dispatch_mutex_);
  std::size_t generation;
  {
    std::lock_guard lock(mutex_);
    job_ = &body;
    job_blocks_ = blocks;
    next_block_ = 0;
    finished_blocks_ = 0;
    error_ = nullptr;
    generation = ++generation_;
  }
  wake_.notify_all();
  drain(generation);

  std::unique_lock lock(mutex_);
  done_.wait(lock, [&] { return finished_blocks_ == job_blocks_; });
  job_ = nullptr;
  if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

void Executor::drain(std::size_t generation) const {
  for (;;) {
    const std::function<void(std::size_t)>* body;
    std::size_t block;
    std::size_t blocks;
    {
      std::lock_guard lock(mutex_);
      // A job cannot complete while one of its blocks is claimed, so a matching
      // generation guarantees job_ is still the job this worker was woken for.
      if (generation_ != generation || job_ == nullptr || next_block_ >= job_blocks_) return;
      body = job_;
      blocks = job_blocks_;
      block = next_block_++;
    }
    std::exception_ptr failure;
    try {
      (*body)(block);
    } catch (...) {
      failure = std::current_exception();
    }
    bool last;
    {
      std::lock_guard lock(mutex_);
      if (failure && !error_) error_ = failure;
      last = ++finished_blocks_ == blocks;
    }
    if (last) done_.notify_all();
  }
}

void Executor::worker_loop() {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || (generation_ != seen && job_ != nullptr); });
      if (stopping_) return;
      seen = generation_;
    }
    drain(seen);
  }
}

const Executor& sequential_executor() {
  static const Executor inline_executor(1);
  return inline_executor;
}

std::size_t default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace seghull
