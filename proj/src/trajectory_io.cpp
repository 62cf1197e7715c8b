#include "nav3d/trajectory_io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nav3d/errors.hpp"

namespace nav3d {

namespace {

void append_double(std::string& out, double v) {
    std::array<char, 40> buf;
    const int len = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    out.append(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

std::string trajectory_to_csv(const HybridTrajectory& traj) {
    std::string out = "t,j,m,x,y,z,hx,hy,hz,ax,ay,az,s,gap,ux,uy,uz\n";
    for (const TrajectorySample& s : traj.samples) {
        append_double(out, s.t);
        out += ',';
        out += std::to_string(s.j);
        out += ',';
        out += std::to_string(static_cast<int>(s.xi.m));
        for (double v : {s.xi.x.x, s.xi.x.y, s.xi.x.z, s.xi.h.x, s.xi.h.y, s.xi.h.z, s.xi.a.x,
                         s.xi.a.y, s.xi.a.z, s.xi.s, s.gap, s.u.x, s.u.y, s.u.z}) {
            out += ',';
            append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NavError("cannot write file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void write_trajectory_csv(const std::string& path, const HybridTrajectory& traj) {
    write_file_atomic(path, trajectory_to_csv(traj));
}

HybridTrajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NavError("cannot open trajectory file: " + path);

    HybridTrajectory traj;
    std::string line;
    if (!std::getline(in, line)) throw NavError("empty trajectory file: " + path);

    double s0 = 0.0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 17> col{};
        std::size_t pos = 0;
        for (int k = 0; k < 17; ++k) {
            const std::size_t next = line.find(',', pos);
            const std::string token = line.substr(pos, next - pos);
            try {
                col[k] = std::stod(token);
            } catch (const std::exception&) {
                throw NavError("malformed trajectory row: " + line);
            }
            if (next == std::string::npos && k < 16)
                throw NavError("trajectory row has too few columns: " + line);
            pos = next + 1;
        }

        TrajectorySample s;
        s.t = col[0];
        s.j = static_cast<int>(col[1]);
        s.xi.m = static_cast<Mode>(static_cast<int>(col[2]));
        s.xi.x = {col[3], col[4], col[5]};
        s.xi.h = {col[6], col[7], col[8]};
        s.xi.a = {col[9], col[10], col[11]};
        s.xi.s = col[12];
        s.gap = col[13];
        s.u = {col[14], col[15], col[16]};
        if (first) {
            s0 = s.xi.s;
            first = false;
        }
        s.xi.s0 = s0;
        s.nearest_index = -1;  // not stored in the CSV
        traj.samples.push_back(s);
    }

    for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
        const TrajectorySample& pre = traj.samples[k];
        const TrajectorySample& post = traj.samples[k + 1];
        if (post.j != pre.j + 1) continue;
        JumpRecord jr;
        jr.t = pre.t;
        jr.j = pre.j;
        jr.kind = (pre.xi.m == Mode::MoveToTarget) ? JumpKind::L0 : JumpKind::L1;
        jr.pre = pre.xi;
        jr.post = post.xi;
        traj.jumps.push_back(jr);
    }
    return traj;
}

}  // namespace nav3d
