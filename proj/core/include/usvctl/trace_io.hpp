#pragma once

#include "usvctl/sim.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace usvctl {

inline constexpr const char* kTraceCsvHeader =
    "t,x,y,psi,u,v,r,xd,yd,psid,tau1,tau2,tau3,taud1,taud2,taud3,"
    "b1,b2,b3,bhat1,bhat2,bhat3,z11,z12,z13,V";

/// Renders the record stream as CSV: the fixed header row, one row per
/// record, values at 9 significant digits, LF line endings.
std::string trace_to_csv_text(const std::vector<SimRecord>& records);

/// Writes the CSV to disk; I/O failures carry the path in the message.
void write_csv(const std::vector<SimRecord>& records,
               const std::filesystem::path& path);

std::vector<SimRecord> parse_csv_text(const std::string& text);
std::vector<SimRecord> read_csv(const std::filesystem::path& path);

}  // namespace usvctl
