#pragma once

#include <map>
#include <string>

#include "mzl/cell.hpp"
#include "mzl/groth.hpp"
#include "mzl/identity.hpp"
#include "mzl/jets.hpp"
#include "mzl/resolution.hpp"
#include "mzl/series.hpp"

// Parsing and canonical rendering for every domain type. Two concrete
// syntaxes are spoken here: a JSON schema per type, discriminated by a
// "kind" field, and a small expression grammar for human-authored ring
// elements and series. Rendering is canonical in both: rendering, parsing
// the result and rendering again reproduces the first render byte for byte.
//
// All parse errors are reported as errc::input and carry the source name
// plus a position (line and column for text, field path for JSON).

namespace mzl::io {

// ---- text grammar -------------------------------------------------------
//
//   expr    := ('+'|'-')? term (('+'|'-') term)*
//   term    := factor (('*'|'/')? factor)*          juxtaposition multiplies
//   factor  := ('-')? atom ('^' ('-')? integer)?
//   atom    := integer | 'L' | variable | class | '(' expr ')'
//   class   := '[' name (':' integer)? ('@' name)? ']'
//
// '/' is division by one geometric factor: the next atom must be a
// parenthesized expression equal to 1 - L^a * V^b with V-degree nonzero.
// A class [mu<k>] defaults to cyclic order k, every other name to order 1;
// ':' overrides the order and '@' attaches a base label. '#' starts a
// comment running to the end of the line.

/// Parses an expression with no series variables.
GrothElement parse_groth(const std::string& src, const std::string& where = "<groth>");

/// Parses "series in <var>..." on the first line, then an expression over
/// the declared variables.
RationalSeries parse_series_text(const std::string& src,
                                 const std::string& where = "<series>");

std::string render_text(const LaurentPoly& p);
std::string render_text(const GrothElement& e);
std::string render_text(const RationalSeries& s);

// ---- JSON schemas --------------------------------------------------------
// One schema per type; "kind" names it. Ring elements embedded in a schema
// are strings in the text grammar above.

GrothElement parse_groth_json(const std::string& src, const std::string& where);
RationalSeries parse_series_json(const std::string& src, const std::string& where);
Cell parse_cell_json(const std::string& src, const std::string& where);
ResolutionData parse_resolution_json(const std::string& src, const std::string& where);
MultiResolutionData parse_multi_resolution_json(const std::string& src,
                                                const std::string& where);
PolySpec parse_poly_json(const std::string& src, const std::string& where);
ArcCondition parse_condition_json(const std::string& src, const std::string& where);
IdentityInstance parse_instance_json(const std::string& src, const std::string& where);
Specialization parse_specialization_json(const std::string& src,
                                         const std::string& where);
WData parse_wdata_json(const std::string& src, const std::string& where);
std::map<std::string, MonoImage> parse_subst_json(const std::string& src,
                                                  const std::string& where);

std::string render_json(const GrothElement& e);
std::string render_json(const RationalSeries& s);
std::string render_json(const Cell& c);
std::string render_json(const ResolutionData& r);
std::string render_json(const MultiResolutionData& r);
std::string render_json(const PolySpec& f);
std::string render_json(const ArcCondition& c);
std::string render_json(const IdentityInstance& inst);
std::string render_json(const Specialization& s);
std::string render_json(const WData& w);
std::string render_json(const std::map<std::string, MonoImage>& subst);

// ---- files ---------------------------------------------------------------

/// Whole file as a string; errc::input when it cannot be read.
std::string slurp_file(const std::string& path);

// A series file may be JSON or the text grammar; the first non-space byte
// decides ('{' means JSON). Everything else is JSON only.
GrothElement load_groth(const std::string& path);
RationalSeries load_series(const std::string& path);
Cell load_cell(const std::string& path);
ResolutionData load_resolution(const std::string& path);
MultiResolutionData load_multi_resolution(const std::string& path);
PolySpec load_poly(const std::string& path);
ArcCondition load_condition(const std::string& path);
IdentityInstance load_instance(const std::string& path);
Specialization load_specialization(const std::string& path);
WData load_wdata(const std::string& path);
std::map<std::string, MonoImage> load_subst(const std::string& path);

/// Parses a JSON file by its "kind" field, validating the value; returns
/// the kind. Used to sweep a fixture directory.
std::string validate_file(const std::string& path);

}  // namespace mzl::io
