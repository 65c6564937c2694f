#pragma once

#include <json.hpp>

#include "exmax/complements.hpp"
#include "exmax/gf.hpp"
#include "exmax/linalg.hpp"
#include "exmax/rep.hpp"
#include "exmax/ryba.hpp"

// JSON forms of the library types. Readers throw UsageError on anything malformed.
namespace exmax::json_io {

using nlohmann::json;

/// "p^k"; readers also take the order q as an integer or a decimal string.
json field_to_json(const gf::Field& f);
gf::Field field_from_json(const json& j);

/// Canonical "p^k:[c0,...]"; readers also take plain integers.
json element_to_json(const gf::Field& f, gf::Elem a);
gf::Elem element_from_json(const gf::Field& f, const json& j);

json vector_to_json(const gf::Field& f, const linalg::Vector& v);
linalg::Vector vector_from_json(const gf::Field& f, const json& j, std::size_t dim);

json matrix_to_json(const linalg::Matrix& m);
linalg::Matrix matrix_from_json(const gf::Field& f, const json& j);

/// {field, dim, generators:{name:matrix}, relations:[words]}
json rep_to_json(const rep::MatrixRep& r);
rep::MatrixRep rep_from_json(const json& j);

/// [{label, dim, h1, trivial}]
json profile_to_json(const rep::CompositionProfile& p);
rep::CompositionProfile profile_from_json(const json& j);

/// [[i, j, vector]] for i < j, zero values omitted
json alt_product_to_json(const ryba::AltProduct& b);
ryba::AltProduct alt_product_from_json(const gf::Field& f, std::size_t dim, const json& j);

struct ComplementInstance {
    complements::FinAbelianGroup t;
    complements::CyclicAction w;
};

/// {orders:[...], action:[[...]], order_w:m}
json instance_to_json(const ComplementInstance& inst);
ComplementInstance instance_from_json(const json& j);

}  // namespace exmax::json_io
