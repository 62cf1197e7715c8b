#pragma once

#include <string>

#include "nav3d/simulator.hpp"

namespace nav3d {

// CSV columns: t,j,m,x,y,z,hx,hy,hz,ax,ay,az,s,gap,ux,uy,uz
// Doubles are printed with max_digits10 precision so the file round-trips
// bit-exactly; content is deterministic for a fixed trajectory.
std::string trajectory_to_csv(const HybridTrajectory& traj);

// Writes atomically (temp file + rename).
void write_trajectory_csv(const std::string& path, const HybridTrajectory& traj);

// Rebuilds a trajectory from its CSV: samples directly, jumps from adjacent
// rows sharing t with incremented j (the mode flip identifies the kind).
// The outcome and warnings are not stored in the CSV and stay empty.
HybridTrajectory read_trajectory_csv(const std::string& path);

// Atomic plain-text write used for all artifacts.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace nav3d
