#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "equiloci/algebra3.hpp"
#include "equiloci/hermitian.hpp"

namespace equiloci {

/// Input document for the CLI. Complex numbers serialize as [re, im], vectors as
/// 3-arrays, matrices as row-major 3x3 nested arrays, tensors as 3x3x3.
struct Scene {
    Mat3 form = Mat3::diag(1, 1, -1);
    std::map<std::string, Vec3> points;
    std::map<std::string, Mat3> bisectors;
    std::map<std::string, Algebra3::Tensor> algebras;
    std::uint64_t seed = 0;
};

class SceneError : public std::runtime_error {
  public:
    explicit SceneError(const std::string& what) : std::runtime_error(what) {}
};

/// Strict parse: unknown keys and malformed shapes are rejected with SceneError.
Scene parse_scene(const std::string& json_text);

/// FNV-1a 64-bit digest of the raw scene text, hex-encoded.
std::string content_digest(const std::string& text);

}  // namespace equiloci
