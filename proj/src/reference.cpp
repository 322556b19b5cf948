#include "fraclbp/reference.hpp"

#include <algorithm>
#include <limits>

namespace fraclbp::reference {

DistanceRaster brute_force_edt(const BinaryImage& img) {
    std::vector<std::pair<int, int>> white;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.at(x, y) != 0) white.emplace_back(x, y);
        }
    }
    if (white.empty()) fail(ErrorCode::EmptyImage, "brute-force EDT needs a white pixel");
    DistanceRaster out(img.width(), img.height(), 0);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (auto [wx, wy] : white) {
                const std::int64_t dx = x - wx;
                const std::int64_t dy = y - wy;
                best = std::min(best, dx * dx + dy * dy);
            }
            out.at(x, y) = best;
        }
    }
    return out;
}

std::vector<std::int64_t> stamped_dilation_volumes(const BinaryImage& img, std::span<const std::int64_t> squared_radii) {
    std::vector<std::int64_t> volumes;
    volumes.reserve(squared_radii.size());
    for (std::int64_t d : squared_radii) {
        BinaryImage covered(img.width(), img.height(), 0);
        int reach = 0;
        while (static_cast<std::int64_t>(reach + 1) * (reach + 1) <= d) ++reach;
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                if (img.at(x, y) == 0) continue;
                for (int dy = -reach; dy <= reach; ++dy) {
                    for (int dx = -reach; dx <= reach; ++dx) {
                        if (static_cast<std::int64_t>(dx) * dx + static_cast<std::int64_t>(dy) * dy > d) continue;
                        const int px = x + dx;
                        const int py = y + dy;
                        if (px < 0 || py < 0 || px >= img.width() || py >= img.height()) continue;
                        covered.at(px, py) = 1;
                    }
                }
            }
        }
        std::int64_t count = 0;
        for (std::uint8_t v : covered.pixels()) count += v;
        volumes.push_back(count);
    }
    return volumes;
}

std::int64_t brute_force_box_count(const BinaryImage& img, int delta) {
    std::int64_t occupied = 0;
    for (int cy = 0; cy < img.height(); cy += delta) {
        for (int cx = 0; cx < img.width(); cx += delta) {
            bool hit = false;
            for (int y = cy; y < std::min(cy + delta, img.height()) && !hit; ++y) {
                for (int x = cx; x < std::min(cx + delta, img.width()); ++x) {
                    if (img.at(x, y) != 0) {
                        hit = true;
                        break;
                    }
                }
            }
            occupied += hit ? 1 : 0;
        }
    }
    return occupied;
}

}  // namespace fraclbp::reference
