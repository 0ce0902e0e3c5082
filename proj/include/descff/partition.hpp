#pragma once

// Integer partitions indexing the monomials c_{-k_1}...c_{-k_s}.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace descff {

// Nonincreasing list of positive integers; level = sum of parts.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int k : parts_)
            if (k < 1) throw std::invalid_argument("partition parts must be >= 1");
        level_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int level() const { return level_; }
    bool empty() const { return parts_.empty(); }
    size_t size() const { return parts_.size(); }

    // multiplicity of part m
    int count(int m) const { return (int)std::count(parts_.begin(), parts_.end(), m); }

    Partition append(int part) const {
        std::vector<int> v = parts_;
        v.push_back(part);
        return Partition(std::move(v));
    }
    // remove one occurrence of parts_[idx]
    Partition without(size_t idx) const {
        std::vector<int> v = parts_;
        v.erase(v.begin() + idx);
        return Partition(std::move(v));
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator<(const Partition& o) const {
        if (level_ != o.level_) return level_ < o.level_;
        return parts_ < o.parts_;
    }

  private:
    std::vector<int> parts_;
    int level_ = 0;
};

// All partitions of n, lexicographically by nonincreasing parts.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions: n must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// p(n) by the Euler pentagonal-number recurrence; independent of the
// enumeration above, usable as a counting oracle.
inline long long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<long long> p(n + 1, 0);
    p[0] = 1;
    for (int i = 1; i <= n; ++i) {
        long long s = 0;
        for (int k = 1;; ++k) {
            int g1 = k * (3 * k - 1) / 2;
            int g2 = k * (3 * k + 1) / 2;
            if (g1 > i && g2 > i) break;
            long long sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= i) s += sign * p[i - g1];
            if (g2 <= i) s += sign * p[i - g2];
        }
        p[i] = s;
    }
    return p[n];
}

}  // namespace descff
