#include "segconn/generator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace segconn {

Instance generate_instance(const GeneratorOptions& o) {
    if (o.k < 0 || o.n <= o.k || o.clusters < 1 || !(o.spread > 0.0) || !(o.max_length >= 0.0)) {
        throw std::invalid_argument("generator needs n > k >= 0, clusters >= 1, spread > 0, max_length >= 0");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double side = 8.0 * o.spread * std::sqrt(static_cast<double>(o.clusters));
    std::vector<Point> centers;
    for (int c = 0; c < o.clusters; ++c) {
        centers.push_back({side * unit(rng), side * unit(rng)});
    }

    Instance inst;
    for (int i = 0; i < o.n - o.k; ++i) {
        const Point& c = centers[static_cast<std::size_t>(unit(rng) * o.clusters) % centers.size()];
        inst.points.push_back({c.x + o.spread * gauss(rng), c.y + o.spread * gauss(rng)});
    }

    for (int s = 0; s < o.k; ++s) {
        const std::size_t a = static_cast<std::size_t>(unit(rng) * o.clusters) % centers.size();
        Point mid;
        if (centers.size() == 1) {
            const double phi = 2.0 * std::numbers::pi * unit(rng);
            mid = centers[a] + 4.0 * o.spread * Point{std::cos(phi), std::sin(phi)};
        } else {
            std::size_t b = a;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < centers.size(); ++c) {
                const double d = distance(centers[a], centers[c]);
                if (c != a && d < best) {
                    best = d;
                    b = c;
                }
            }
            mid = 0.5 * (centers[a] + centers[b]);
        }
        mid = mid + 0.5 * o.spread * Point{gauss(rng), gauss(rng)};
        const double phi = std::numbers::pi * unit(rng);
        const double half = 0.5 * o.max_length * unit(rng);
        inst.segments.push_back(ParamSegment::make(mid, {std::cos(phi), std::sin(phi)}, -half, half));
    }
    return inst;
}

}  // namespace segconn
