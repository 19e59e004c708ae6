#include "flowc/procedural/layout.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flowc::procedural {

Vertex District::centroid() const
{
    return {(boundary[0].x + boundary[2].x) / 2, (boundary[0].y + boundary[2].y) / 2};
}

ManhattanLayout::ManhattanLayout(std::size_t num_districts, double diameter)
    : requested_(num_districts), diameter_(diameter)
{
    if (num_districts < 1)
        throw ArgumentError("a layout needs at least one district");
    if (!(diameter > 0) || !std::isfinite(diameter))
        throw ArgumentError("district diameter must be positive, got " + std::to_string(diameter));
    nx_ = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(num_districts))));
    // guard the floating sqrt against an off-by-one on perfect squares
    while ((nx_ + 1) * (nx_ + 1) <= num_districts)
        ++nx_;
    while (nx_ * nx_ > num_districts)
        --nx_;
    ny_ = (num_districts + nx_ - 1) / nx_;
}

void ManhattanLayout::generate(Randomizer& rng)
{
    x_lines_.assign(1, 0.0);
    y_lines_.assign(1, 0.0);
    for (std::size_t i = 0; i < nx_; ++i)
        x_lines_.push_back(x_lines_.back() + rng.around(diameter_));
    for (std::size_t j = 0; j < ny_; ++j)
        y_lines_.push_back(y_lines_.back() + rng.around(diameter_));

    districts_.clear();
    districts_.reserve(nx_ * ny_);
    for (std::size_t i = 0; i < nx_; ++i) {
        for (std::size_t j = 0; j < ny_; ++j) {
            District d;
            d.boundary = {Vertex{x_lines_[i], y_lines_[j]}, Vertex{x_lines_[i + 1], y_lines_[j]},
                          Vertex{x_lines_[i + 1], y_lines_[j + 1]}, Vertex{x_lines_[i], y_lines_[j + 1]}};
            d.i = static_cast<int>(i);
            d.j = static_cast<int>(j);
            districts_.push_back(d);
        }
    }
}

Vertex ManhattanLayout::center() const
{
    if (!generated())
        return {};
    return {x_lines_.back() / 2, y_lines_.back() / 2};
}

double ManhattanLayout::distance_from_center(const District& district) const
{
    if (std::find(districts_.begin(), districts_.end(), district) == districts_.end())
        throw ArgumentError("district is not part of this layout");
    Vertex c = district.centroid();
    Vertex m = center();
    return std::hypot(c.x - m.x, c.y - m.y);
}

ManhattanLayout manhattan_generate(std::size_t num_districts, double diameter, Randomizer& rng)
{
    ManhattanLayout layout(num_districts, diameter);
    layout.generate(rng);
    return layout;
}

}  // namespace flowc::procedural
