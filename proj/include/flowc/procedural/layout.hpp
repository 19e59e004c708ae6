#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "flowc/procedural/randomizer.hpp"

namespace flowc::procedural {

struct Vertex {
    double x = 0;
    double y = 0;

    bool operator==(const Vertex&) const = default;
};

/// Axis-aligned rectangular city cell. Boundary runs counter-clockwise from
/// the min-x/min-y corner: (x0,y0), (x1,y0), (x1,y1), (x0,y1).
struct District {
    std::array<Vertex, 4> boundary;
    int i = 0;  ///< column in the grid (X)
    int j = 0;  ///< row in the grid (Y)

    Vertex centroid() const;
    double width() const { return boundary[1].x - boundary[0].x; }
    double height() const { return boundary[3].y - boundary[0].y; }
    double area() const { return width() * height(); }

    bool operator==(const District&) const = default;
};

/// Manhattan-like grid of districts. `num_districts` is the requested total;
/// the grid is floor(sqrt(n)) columns by ceil(n / columns) rows.
class ManhattanLayout {
public:
    static constexpr std::size_t kDefaultDistricts = 9;
    static constexpr double kDefaultDiameter = 2000;

    /// Throws ArgumentError unless num_districts >= 1 and diameter > 0.
    explicit ManhattanLayout(std::size_t num_districts = kDefaultDistricts, double diameter = kDefaultDiameter);

    /// Draws nx gaps for the X grid lines, then ny gaps for the Y lines, each
    /// one around(diameter), and rebuilds the district list.
    void generate(Randomizer& rng);

    bool generated() const { return !x_lines_.empty(); }
    std::size_t requested() const { return requested_; }
    double diameter() const { return diameter_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }

    /// Ordered by column, then row within the column.
    const std::vector<District>& districts() const { return districts_; }
    const std::vector<double>& x_lines() const { return x_lines_; }
    const std::vector<double>& y_lines() const { return y_lines_; }

    /// Centroid of the whole extent.
    Vertex center() const;

    /// Throws ArgumentError when `district` is not part of this layout.
    double distance_from_center(const District& district) const;

private:
    std::size_t requested_;
    double diameter_;
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> x_lines_;
    std::vector<double> y_lines_;
    std::vector<District> districts_;
};

ManhattanLayout manhattan_generate(std::size_t num_districts, double diameter, Randomizer& rng);

}  // namespace flowc::procedural
