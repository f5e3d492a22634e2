#pragma once

#include <string>
#include <vector>

#include "siegelkit/boundlab.hpp"
#include "siegelkit/gl2.hpp"

namespace siegelkit {

/// CSV with header "seed,n,N,D,H,r32,r33,r34,r35,r36,r37,rH,ms". Ratio
/// fields use decimal scientific notation with `out_digits` significant
/// digits. The ms column is 0 unless `include_timing` is set, so that a
/// config plus seed reproduces the file byte-for-byte.
std::string records_to_csv(const std::vector<ExperimentRecord>& records, int out_digits,
                           bool include_timing = false);

/// JSON mirror of the CSV columns. When `emit_matrices` is set and a record
/// kept its witness, gamma is embedded exactly (matrix text format) and the
/// decomposition in decimal.
std::string records_to_json(const std::vector<ExperimentRecord>& records, int out_digits,
                            bool include_timing = false, bool emit_matrices = false);

/// Parses the scalar columns back from the JSON mirror.
std::vector<ExperimentRecord> records_from_json(const std::string& text);

/// CSV with header "N,idx,a,b,d,H,ratio".
std::string gl2_records_to_csv(const std::vector<Gl2Record>& records, int out_digits);

/// Writes text to the path, creating or truncating. Throws IoError with the
/// path in the message.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace siegelkit
