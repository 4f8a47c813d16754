#include "klent/knn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "klent/errors.hpp"

namespace klent {

void PointCloud::validate() const {
    if (n < 2) throw std::invalid_argument("PointCloud: need n >= 2");
    if (d < 1) throw std::invalid_argument("PointCloud: need d >= 1");
    if (data.size() != n * d) throw std::invalid_argument("PointCloud: data size != n*d");
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("PointCloud: non-finite coordinate");
        }
    }
}

namespace {

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = a[c] - b[c];
        s += diff * diff;
    }
    return s;
}

// Candidate neighbour; ordered by (distance, original index) so that equal
// distances resolve deterministically in favour of the smaller index.
struct Cand {
    double d2;
    std::size_t idx;
    bool operator<(const Cand& o) const {
        return d2 < o.d2 || (d2 == o.d2 && idx < o.idx);
    }
};

// Fixed-capacity max-heap of the k best candidates seen so far.
class KBest {
public:
    explicit KBest(std::size_t k) : k_(k) { heap_.reserve(k); }

    void offer(Cand c) {
        if (heap_.size() < k_) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end());
        } else if (c < heap_.front()) {
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    bool full() const { return heap_.size() == k_; }
    double worst_d2() const { return heap_.front().d2; }

    // Ascending by (distance, index).
    std::vector<Cand> sorted() {
        std::vector<Cand> out = heap_;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::size_t k_;
    std::vector<Cand> heap_;
};

// Axis-aligned median-split kd-tree over point indices.  Immutable after
// construction; queries are exact.
class KdTree {
public:
    explicit KdTree(const PointCloud& cloud) : cloud_(cloud), indices_(cloud.n) {
        std::iota(indices_.begin(), indices_.end(), std::size_t{0});
        nodes_.reserve(2 * cloud.n / kLeafSize + 2);
        root_ = build(0, cloud.n);
    }

    void query(std::size_t qi, KBest& best) const {
        search(root_, qi, best);
    }

private:
    static constexpr std::size_t kLeafSize = 16;

    struct Node {
        std::size_t begin, end;       // range in indices_
        int axis = -1;                // -1 for leaves
        double split = 0.0;
        std::int32_t left = -1, right = -1;
        std::vector<double> box_min, box_max;
    };

    std::int32_t build(std::size_t begin, std::size_t end) {
        Node node;
        node.begin = begin;
        node.end = end;
        compute_box(node);
        const std::size_t count = end - begin;
        if (count > kLeafSize) {
            // Split the widest axis at the median.
            int axis = 0;
            double width = -1.0;
            for (std::size_t c = 0; c < cloud_.d; ++c) {
                const double w = node.box_max[c] - node.box_min[c];
                if (w > width) {
                    width = w;
                    axis = static_cast<int>(c);
                }
            }
            if (width > 0.0) {
                const std::size_t mid = begin + count / 2;
                std::nth_element(indices_.begin() + begin, indices_.begin() + mid,
                                 indices_.begin() + end,
                                 [&](std::size_t a, std::size_t b) {
                                     return cloud_.point(a)[axis] < cloud_.point(b)[axis];
                                 });
                node.axis = axis;
                node.split = cloud_.point(indices_[mid])[axis];
                const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
                nodes_.push_back(std::move(node));
                const std::int32_t l = build(begin, mid);
                const std::int32_t r = build(mid, end);
                nodes_[id].left = l;
                nodes_[id].right = r;
                return id;
            }
            // All points coincide on every axis; keep as a leaf.
        }
        const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(std::move(node));
        return id;
    }

    void compute_box(Node& node) const {
        node.box_min.assign(cloud_.d, std::numeric_limits<double>::infinity());
        node.box_max.assign(cloud_.d, -std::numeric_limits<double>::infinity());
        for (std::size_t i = node.begin; i < node.end; ++i) {
            auto p = cloud_.point(indices_[i]);
            for (std::size_t c = 0; c < cloud_.d; ++c) {
                node.box_min[c] = std::min(node.box_min[c], p[c]);
                node.box_max[c] = std::max(node.box_max[c], p[c]);
            }
        }
    }

    double box_dist2(const Node& node, std::span<const double> q) const {
        double s = 0.0;
        for (std::size_t c = 0; c < cloud_.d; ++c) {
            double diff = 0.0;
            if (q[c] < node.box_min[c]) diff = node.box_min[c] - q[c];
            else if (q[c] > node.box_max[c]) diff = q[c] - node.box_max[c];
            s += diff * diff;
        }
        return s;
    }

    void search(std::int32_t id, std::size_t qi, KBest& best) const {
        const Node& node = nodes_[id];
        if (best.full() && box_dist2(node, cloud_.point(qi)) > best.worst_d2()) {
            return;
        }
        if (node.axis < 0) {
            auto q = cloud_.point(qi);
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = indices_[i];
                if (idx == qi) continue;
                best.offer({dist2(q, cloud_.point(idx)), idx});
            }
            return;
        }
        // Near side first so the pruning bound tightens early.
        const bool left_first = cloud_.point(qi)[node.axis] < node.split;
        search(left_first ? node.left : node.right, qi, best);
        search(left_first ? node.right : node.left, qi, best);
    }

    const PointCloud& cloud_;
    std::vector<std::size_t> indices_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

}  // namespace

NeighbourDistances all_knn_distances(const PointCloud& cloud, std::size_t k,
                                     KnnBackend backend) {
    cloud.validate();
    if (k < 1 || k > cloud.n - 1) {
        throw std::invalid_argument("all_knn_distances: need 1 <= k <= n-1");
    }

    NeighbourDistances out;
    out.n = cloud.n;
    out.k = k;
    out.rho.resize(cloud.n * k);

    std::vector<std::pair<std::size_t, std::size_t>> zero_pairs;

    auto finish_row = [&](std::size_t i, std::vector<Cand>& cands) {
        for (std::size_t j = 0; j < k; ++j) {
            out.rho[i * k + j] = std::sqrt(cands[j].d2);
        }
        if (cands[0].d2 == 0.0) {
            const std::size_t other = cands[0].idx;
            if (i < other) zero_pairs.emplace_back(i, other);
        }
    };

    if (backend == KnnBackend::brute) {
        std::vector<Cand> cands;
        for (std::size_t i = 0; i < cloud.n; ++i) {
            KBest best(k);
            auto pi = cloud.point(i);
            for (std::size_t j = 0; j < cloud.n; ++j) {
                if (j == i) continue;
                best.offer({dist2(pi, cloud.point(j)), j});
            }
            cands = best.sorted();
            finish_row(i, cands);
        }
    } else {
        KdTree tree(cloud);
        std::vector<Cand> cands;
        for (std::size_t i = 0; i < cloud.n; ++i) {
            KBest best(k);
            tree.query(i, best);
            cands = best.sorted();
            finish_row(i, cands);
        }
    }

    if (!zero_pairs.empty()) {
        throw ZeroDistanceError(std::move(zero_pairs));
    }
    return out;
}

}  // namespace klent
