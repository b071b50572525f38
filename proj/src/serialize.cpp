// SPDX-License-Identifier: Apache-2.0
#include "ris/serialize.hpp"

#include "ris/error.hpp"

namespace ris {

using nlohmann::json;

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols))
      throw Error(ErrorKind::kInvalidSpec, "matrix data length does not match its shape");
    CMat m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c, ++k) m(r, c) = {data[k].at(0).get<double>(), data[k].at(1).get<double>()};
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("malformed matrix: ") + e.what());
  }
}

json network_to_json(const MultiportNetwork& net) {
  const auto& d = net.dims();
  const auto& f = net.flags();
  return {
      {"dims", {{"n_t", d.n_t}, {"n_r", d.n_r}, {"n_i", d.n_i}, {"l", d.l}}},
      {"z0", net.z0()},
      {"assumptions",
       {{"terminal_unilateral", f.terminal_unilateral},
        {"ris_unilateral", f.ris_unilateral},
        {"cascade_obstruction", f.cascade_obstruction},
        {"matched_terminals", f.matched_terminals},
        {"matched_ris", f.matched_ris},
        {"pure_cascade", f.pure_cascade}}},
      {"blocks",
       {{"Z_TT", matrix_to_json(net.z_tt())},
        {"Z_TI", matrix_to_json(net.z_ti())},
        {"Z_TR", matrix_to_json(net.z_tr())},
        {"Z_IT", matrix_to_json(net.z_it())},
        {"Z_II", matrix_to_json(net.z_ii())},
        {"Z_IR", matrix_to_json(net.z_ir())},
        {"Z_RT", matrix_to_json(net.z_rt())},
        {"Z_RI", matrix_to_json(net.z_ri())},
        {"Z_RR", matrix_to_json(net.z_rr())}}},
  };
}

json cascade_to_json(const CascadeChannels& ch) {
  json inter = json::array();
  for (const auto& h : ch.inter) inter.push_back(matrix_to_json(h));
  json out = {{"h_it_1", matrix_to_json(ch.h_it_1)}, {"inter", std::move(inter)}, {"h_ri_l", matrix_to_json(ch.h_ri_l)}};
  if (ch.side) {
    json ri = json::array();
    json it = json::array();
    for (const auto& h : ch.side->h_ri) ri.push_back(matrix_to_json(h));
    for (const auto& h : ch.side->h_it) it.push_back(matrix_to_json(h));
    out["side"] = {{"h_rt", matrix_to_json(ch.side->h_rt)}, {"h_ri", std::move(ri)}, {"h_it", std::move(it)}};
  }
  return out;
}

CascadeChannels cascade_from_json(const json& j) {
  try {
    CascadeChannels ch;
    ch.h_it_1 = matrix_from_json(j.at("h_it_1"));
    for (const auto& h : j.at("inter")) ch.inter.push_back(matrix_from_json(h));
    ch.h_ri_l = matrix_from_json(j.at("h_ri_l"));
    if (j.contains("side")) {
      SideLinks side;
      const auto& s = j.at("side");
      side.h_rt = matrix_from_json(s.at("h_rt"));
      for (const auto& h : s.at("h_ri")) side.h_ri.push_back(matrix_from_json(h));
      for (const auto& h : s.at("h_it")) side.h_it.push_back(matrix_from_json(h));
      ch.side = std::move(side);
    }
    ch.validate();
    return ch;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("malformed cascade: ") + e.what());
  }
}

}  // namespace ris
