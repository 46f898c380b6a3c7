#include "nlhd/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "aggregation.hpp"
#include "nlhd/haar.hpp"
#include "parallel.hpp"

namespace nlhd {

ImagePlane AggregationBuffer::resolve() const {
  ImagePlane out(value_.height(), value_.width());
  auto v = value_.values();
  auto w = weight_.values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (w[i] <= 0.0) {
      throw ImageError("AggregationBuffer: pixel " + std::to_string(i) + " was never covered");
    }
    o[i] = v[i] / w[i];
  }
  return out;
}

namespace {

struct PositionResult {
  std::array<detail::PatchStackAccumulator, 3> channels;
  PositionGroups groups;
};

PositionResult process_position(const ImageRGB& img, const MatchParams& params, PassMode mode,
                                BlockOrigin ref, bool want_provenance) {
  const Channel matching = select_matching_channel(img, ref, params.patch_side);
  const auto origins = block_match(img.channel(matching), ref, params);
  const auto blocks = extract_block_groups(img, origins, params.patch_side);

  PositionResult result;
  if (want_provenance) {
    result.groups.reference = ref;
    result.groups.channel = matching;
    result.groups.origins = origins;
    result.groups.num_rows = params.num_rows;
    result.groups.rows.reserve(blocks[0].rows() * static_cast<std::size_t>(params.num_rows));
  }

  for (std::size_t c = 0; c < 3; ++c) {
    const auto& stack = blocks[c].stack;
    auto& acc = result.channels[c];
    acc = detail::PatchStackAccumulator(origins, params.patch_side);
    const RowDistanceTable table(stack);
    const bool record = want_provenance && kChannels[c] == matching;

    for (std::size_t ref_row = 0; ref_row < stack.rows(); ++ref_row) {
      const auto sel = select_similar_rows(table.squared_from(ref_row), static_cast<int>(ref_row),
                                           params.num_rows);
      const auto spectrum = haar_forward(gather_rows(stack, sel.rows));
      const Matrix recon = mode == PassMode::Low ? reconstruct_low(spectrum)
                                                 : reconstruct_high(spectrum);
      for (std::size_t r = 0; r < sel.rows.size(); ++r) {
        const auto src_row = static_cast<std::size_t>(sel.rows[r]);
        for (std::size_t col = 0; col < recon.cols(); ++col) {
          acc.add(src_row, col, recon(r, col));
        }
      }
      if (record) {
        result.groups.rows.insert(result.groups.rows.end(), sel.rows.begin(), sel.rows.end());
      }
    }
  }
  return result;
}

}  // namespace

std::array<ImagePlane, 3> decompose_pass(const ImageRGB& img, const MatchParams& params,
                                         PassMode mode, int threads,
                                         GroupProvenance* provenance) {
  params.validate();
  if (img.empty()) throw ImageError("decompose_pass: empty image");
  const auto positions = reference_positions(img.height(), img.width(), params);

  std::array<AggregationBuffer, 3> buffers{AggregationBuffer(img.height(), img.width()),
                                           AggregationBuffer(img.height(), img.width()),
                                           AggregationBuffer(img.height(), img.width())};
  if (provenance) {
    provenance->height = img.height();
    provenance->width = img.width();
    provenance->params = params;
    provenance->positions.clear();
    provenance->positions.reserve(positions.size());
  }

  detail::ordered_parallel_map(
      positions.size(), threads,
      [&](std::size_t i) { return process_position(img, params, mode, positions[i], provenance != nullptr); },
      [&](std::size_t, PositionResult&& r) {
        for (std::size_t c = 0; c < 3; ++c) r.channels[c].merge_into(buffers[c]);
        if (provenance) provenance->positions.push_back(std::move(r.groups));
      });

  return {buffers[0].resolve(), buffers[1].resolve(), buffers[2].resolve()};
}

GroupProvenance match_groups(const ImageRGB& img, const MatchParams& params, int threads) {
  params.validate();
  if (img.empty()) throw ImageError("match_groups: empty image");
  const auto positions = reference_positions(img.height(), img.width(), params);

  GroupProvenance out;
  out.height = img.height();
  out.width = img.width();
  out.params = params;
  out.positions.resize(positions.size());
  detail::parallel_for(positions.size(), threads, [&](std::size_t i) {
    const BlockOrigin ref = positions[i];
    auto& g = out.positions[i];
    g.reference = ref;
    g.channel = select_matching_channel(img, ref, params.patch_side);
    g.origins = block_match(img.channel(g.channel), ref, params);
    g.num_rows = params.num_rows;
    const auto blocks = extract_block_group(img.channel(g.channel), g.origins, params.patch_side,
                                            g.channel);
    const RowDistanceTable table(blocks.stack);
    for (std::size_t row = 0; row < blocks.rows(); ++row) {
      const auto sel =
          select_similar_rows(table.squared_from(row), static_cast<int>(row), params.num_rows);
      g.rows.insert(g.rows.end(), sel.rows.begin(), sel.rows.end());
    }
  });
  return out;
}

DecompositionResult decompose(const ImageRGB& img, const MatchParams& illum,
                              const MatchParams& refl, const DecomposeOptions& options,
                              GroupProvenance* provenance) {
  DecompositionResult out;
  out.illumination = decompose_pass(img, illum, PassMode::Low, options.threads, provenance);
  out.reflectance = decompose_pass(img, refl, PassMode::High, options.threads);
  out.fused_illumination =
      fuse_illumination(out.illumination[0], out.illumination[1], out.illumination[2]);
  out.fused_reflectance = fuse_reflectance(out.reflectance[0], out.reflectance[1],
                                           out.reflectance[2], options.abs_all_reflectance);
  return out;
}

ImagePlane fuse_illumination(const ImagePlane& r, const ImagePlane& g, const ImagePlane& b) {
  require_same_shape(r, g, "fuse_illumination");
  require_same_shape(r, b, "fuse_illumination");
  ImagePlane out(r.height(), r.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = std::max({r.values()[i], g.values()[i], b.values()[i]});
  }
  return out;
}

ImagePlane fuse_reflectance(const ImagePlane& r, const ImagePlane& g, const ImagePlane& b,
                            bool abs_all) {
  require_same_shape(r, g, "fuse_reflectance");
  require_same_shape(r, b, "fuse_reflectance");
  ImagePlane out(r.height(), r.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double first = abs_all ? std::abs(r.values()[i]) : r.values()[i];
    out.values()[i] = std::min({first, std::abs(g.values()[i]), std::abs(b.values()[i])});
  }
  return out;
}

ImagePlane reflectance_for_display(const ImagePlane& reflectance) {
  ImagePlane out(reflectance.height(), reflectance.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = std::clamp(reflectance.values()[i] + 0.5, 0.0, 1.0);
  }
  return out;
}

}  // namespace nlhd
