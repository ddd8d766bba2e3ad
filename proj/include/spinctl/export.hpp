#pragma once

// Trajectory → CsvTable. Column sets follow the coupled-extremal header
//   t,s1x,s1y,s1z,s2x,s2y,s2z,p1x,p1y,p1z,p2x,p2y,p2z,bx,by,bz,kappa,H,cost
// with the columns a mode does not have dropped.

#include <string>
#include <vector>

#include "spinctl/csv.hpp"
#include "spinctl/integrate.hpp"
#include "spinctl/systems.hpp"

namespace spinctl {

namespace detail {

inline void append(std::vector<double>& row, const Vector3& v) {
    row.push_back(v.x);
    row.push_back(v.y);
    row.push_back(v.z);
}

}  // namespace detail

inline const std::vector<std::string>& coupled_extremal_header() {
    static const std::vector<std::string> h{"t",   "s1x", "s1y", "s1z", "s2x", "s2y", "s2z",
                                            "p1x", "p1y", "p1z", "p2x", "p2y", "p2z", "bx",
                                            "by",  "bz",  "kappa", "H", "cost"};
    return h;
}

inline CsvTable to_table(const Trajectory<12>& traj, const CoupledExtremalSystem&) {
    CsvTable t{coupled_extremal_header(), {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        for (std::size_t k = 0; k < 4; ++k) detail::append(row, traj.states[i].block(k));
        detail::append(row, traj.controls[i].b);
        row.push_back(traj.controls[i].kappa);
        row.push_back(cost_rate(traj.controls[i]));
        row.push_back(traj.running_cost[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable to_table(const Trajectory<6>& traj, const SingleExtremalSystem& sys) {
    CsvTable t{{"t", "s1x", "s1y", "s1z", "p1x", "p1y", "p1z", "bx", "by", "bz", "H", "cost"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        detail::append(row, traj.states[i].block(0));
        detail::append(row, traj.states[i].block(1));
        detail::append(row, traj.controls[i].b);
        row.push_back(sys.hamiltonian(traj.states[i]));
        row.push_back(traj.running_cost[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable to_table(const Trajectory<3>& traj, const SingleOpenLoopSystem&) {
    CsvTable t{{"t", "s1x", "s1y", "s1z", "bx", "by", "bz", "cost"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        detail::append(row, traj.states[i].block(0));
        detail::append(row, traj.controls[i].b);
        row.push_back(traj.running_cost[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable to_table(const Trajectory<6>& traj, const CoupledOpenLoopSystem&) {
    CsvTable t{{"t", "s1x", "s1y", "s1z", "s2x", "s2y", "s2z", "bx", "by", "bz", "kappa", "cost"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        detail::append(row, traj.states[i].block(0));
        detail::append(row, traj.states[i].block(1));
        detail::append(row, traj.controls[i].b);
        row.push_back(traj.controls[i].kappa);
        row.push_back(traj.running_cost[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace spinctl
