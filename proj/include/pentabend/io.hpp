#ifndef PENTABEND_IO_HPP
#define PENTABEND_IO_HPP

/** \file io.hpp
 * Machine-readable output (versioned JSON and CSV) and config-file intake.
 *
 * Every JSON document carries {"schema": 1}; every CSV starts with the
 * comment line "# pentabend <name> v1" followed by the column header.
 * Numbers are written with 17 significant digits so they round-trip. */

#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "transition.hpp"
#include "types.hpp"

namespace pentabend {

using Json = nlohmann::ordered_json;

/** Shortest representation with up to 17 significant digits ("%.17g"). */
std::string format_double(double x);

/** Fresh document with the schema marker set. */
Json json_document();

/* ---- JSON writers ---- */

/** {schema, rank, type, t, probe, roots: [re,im] x 2, residuals}. */
Json to_json(const SingularityReport& rep);

/** {schema, t_minus, t_plus, a, b, c, delta, A_coeffs, g_coeffs}. */
Json to_json(const QuadraticData& q);

/** Rows with both channels: {t, type, eigen_type?, A, B, disc, roots}. */
Json sweep_to_json(const std::vector<SweepRow>& rows);

/** {schema, vertices_34: [[J,l],...], vertices_45: [...]} . */
Json vertices_to_json(const PredictedVertices& v);

/** Configuration as an array of 3-vectors, row order = edge index. */
Json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

/* ---- CSV writers ---- */

/** Columns: t,type,A,B,disc,root1_re,root1_im,root2_re,root2_im. */
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/** Columns: J,H,ell34,ell45. */
std::string moment_samples_to_csv(const std::vector<MomentSample>& samples);

/* ---- files ---- */

void write_text_file(const std::string& path, const std::string& text);

/** Parses a JSON file; throws ContractViolation with the parse error text. */
Json read_json_file(const std::string& path);

} // namespace pentabend

#endif
