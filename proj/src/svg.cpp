#include "nav3d/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nav3d {

namespace {

std::string fmt(double v) {
    std::array<char, 32> buf;
    std::snprintf(buf.data(), buf.size(), "%.3f", v);
    return buf.data();
}

struct Frame {
    double x_min, x_max, y_min, y_max;  // data range
    double width, height, margin;

    double sx(double x) const {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
    }
    double sy(double y) const {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
    }
};

void expand(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

void polyline(std::ostream& os, const std::vector<std::pair<double, double>>& pts,
              const Frame& f, const std::string& color, double width) {
    if (pts.size() < 2) return;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
       << "\" points=\"";
    for (const auto& [x, y] : pts) os << fmt(f.sx(x)) << "," << fmt(f.sy(y)) << " ";
    os << "\"/>\n";
}

// Isometric screen projection; the z axis points up on screen.
std::pair<double, double> iso(const Vec3& p) {
    constexpr double c = 0.8660254037844386;  // cos(30 deg)
    return {(p.x - p.y) * c, (p.x + p.y) * 0.5 - p.z};
}

const char* mode_color(Mode m) { return m == Mode::MoveToTarget ? "#d62728" : "#1f77b4"; }

}  // namespace

std::string distance_plot_svg(const std::vector<const HybridTrajectory*>& trajectories,
                              double r_a) {
    Frame f{0, 1, 0, 1, 860, 420, 48};
    f.x_min = 0.0;
    f.x_max = 1e-9;
    f.y_min = 0.0;
    f.y_max = r_a;
    for (const HybridTrajectory* traj : trajectories) {
        for (const TrajectorySample& s : traj->samples) {
            f.x_max = std::max(f.x_max, s.t);
            f.y_max = std::max(f.y_max, s.gap + r_a);
        }
    }
    expand(f.x_min, f.x_max);
    expand(f.y_min, f.y_max);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
       << f.height << "\" viewBox=\"0 0 " << f.width << " " << f.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    os << "<line x1=\"" << fmt(f.sx(f.x_min)) << "\" y1=\"" << fmt(f.sy(0)) << "\" x2=\""
       << fmt(f.sx(f.x_max)) << "\" y2=\"" << fmt(f.sy(0)) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << fmt(f.sx(0)) << "\" y1=\"" << fmt(f.sy(f.y_min)) << "\" x2=\""
       << fmt(f.sx(0)) << "\" y2=\"" << fmt(f.sy(f.y_max)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(f.width - f.margin) << "\" y=\"" << fmt(f.sy(0) + 28)
       << "\" font-size=\"12\" text-anchor=\"end\">t [s]</text>\n";
    os << "<text x=\"" << fmt(f.sx(0) + 6) << "\" y=\"" << fmt(f.margin - 8)
       << "\" font-size=\"12\">distance to obstacle union [m]</text>\n";

    // safety threshold r_a
    os << "<line x1=\"" << fmt(f.sx(f.x_min)) << "\" y1=\"" << fmt(f.sy(r_a)) << "\" x2=\""
       << fmt(f.sx(f.x_max)) << "\" y2=\"" << fmt(f.sy(r_a))
       << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>\n";
    os << "<text x=\"" << fmt(f.sx(f.x_min) + 4) << "\" y=\"" << fmt(f.sy(r_a) - 4)
       << "\" font-size=\"11\" fill=\"#555555\">r_a = " << fmt(r_a) << "</text>\n";

    const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    for (std::size_t k = 0; k < trajectories.size(); ++k) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(trajectories[k]->samples.size());
        for (const TrajectorySample& s : trajectories[k]->samples)
            pts.emplace_back(s.t, s.gap + r_a);
        polyline(os, pts, f, palette[k % 8], 1.2);
    }
    os << "</svg>\n";
    return os.str();
}

std::string trajectory_plot_svg(const World& world,
                                const std::vector<const HybridTrajectory*>& trajectories) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    auto grow = [&](const std::pair<double, double>& p) {
        lo_x = std::min(lo_x, p.first);
        hi_x = std::max(hi_x, p.first);
        lo_y = std::min(lo_y, p.second);
        hi_y = std::max(hi_y, p.second);
    };
    grow(iso(Vec3{}));
    for (const HybridTrajectory* traj : trajectories)
        for (const TrajectorySample& s : traj->samples) grow(iso(s.xi.x));
    for (const ConvexShape& shape : world.obstacles) {
        const Sphere bound = bounding_sphere(shape);
        const auto c = iso(bound.center);
        grow({c.first - bound.radius, c.second - bound.radius});
        grow({c.first + bound.radius, c.second + bound.radius});
    }

    Frame f{lo_x, hi_x, lo_y, hi_y, 760, 640, 40};
    expand(f.x_min, f.x_max);
    expand(f.y_min, f.y_max);
    // uniform scale
    const double span_x = f.x_max - f.x_min, span_y = f.y_max - f.y_min;
    const double usable_x = f.width - 2 * f.margin, usable_y = f.height - 2 * f.margin;
    const double scale = std::min(usable_x / span_x, usable_y / span_y);
    f.x_max = f.x_min + usable_x / scale;
    f.y_max = f.y_min + usable_y / scale;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
       << f.height << "\" viewBox=\"0 0 " << f.width << " " << f.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // obstacles
    for (const ConvexShape& shape : world.obstacles) {
        if (const auto* s = std::get_if<Sphere>(&shape)) {
            const auto c = iso(s->center);
            os << "<circle cx=\"" << fmt(f.sx(c.first)) << "\" cy=\"" << fmt(f.sy(c.second))
               << "\" r=\"" << fmt(s->radius * scale)
               << "\" fill=\"#cccccc\" fill-opacity=\"0.6\" stroke=\"#888888\"/>\n";
            continue;
        }
        const HullMesh mesh = std::holds_alternative<HalfspaceBox>(shape)
                                  ? box_mesh(std::get<HalfspaceBox>(shape))
                                  : std::get<ConvexPolytope>(shape).mesh();
        for (const auto& e : mesh.edges) {
            const auto p1 = iso(mesh.vertices[e[0]]);
            const auto p2 = iso(mesh.vertices[e[1]]);
            os << "<line x1=\"" << fmt(f.sx(p1.first)) << "\" y1=\"" << fmt(f.sy(p1.second))
               << "\" x2=\"" << fmt(f.sx(p2.first)) << "\" y2=\"" << fmt(f.sy(p2.second))
               << "\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n";
        }
    }

    // trajectories, split into runs of constant mode
    for (const HybridTrajectory* traj : trajectories) {
        const auto& samples = traj->samples;
        std::size_t k = 0;
        while (k + 1 < samples.size()) {
            const Mode m = samples[k].xi.m;
            std::vector<std::pair<double, double>> pts;
            pts.push_back(iso(samples[k].xi.x));
            std::size_t e = k + 1;
            while (e < samples.size() && samples[e].xi.m == m) {
                pts.push_back(iso(samples[e].xi.x));
                ++e;
            }
            polyline(os, pts, f, mode_color(m), 1.4);
            k = e;  // x is unchanged across jumps, so runs join up visually
        }
        if (!samples.empty()) {
            const auto s0 = iso(samples.front().xi.x);
            os << "<path d=\"M " << fmt(f.sx(s0.first)) << " " << fmt(f.sy(s0.second) - 6)
               << " l 5 6 l -5 6 l -5 -6 z\" fill=\"#2ca02c\"/>\n";
        }
    }

    // target at the origin
    const auto o = iso(Vec3{});
    os << "<line x1=\"" << fmt(f.sx(o.first) - 5) << "\" y1=\"" << fmt(f.sy(o.second)) << "\" x2=\""
       << fmt(f.sx(o.first) + 5) << "\" y2=\"" << fmt(f.sy(o.second))
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    os << "<line x1=\"" << fmt(f.sx(o.first)) << "\" y1=\"" << fmt(f.sy(o.second) - 5) << "\" x2=\""
       << fmt(f.sx(o.first)) << "\" y2=\"" << fmt(f.sy(o.second) + 5)
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    os << "</svg>\n";
    return os.str();
}

}  // namespace nav3d
