#include "cuprank/review.hpp"

#include "cuprank/errors.hpp"

namespace cuprank {

EncodedVector encode_review(const ContextualReview& review, const ContextSchema& schema,
                            const EndorsementVocabulary& vocab) {
    if (review.endorsements.empty())
        throw DataError("review of '" + review.destination_id + "' has no endorsements");

    EncodedVector out;
    out.endorsement_dim = vocab.size();
    out.bits.assign(vocab.size() + schema.coordinate_count(), 0);

    for (const auto& endorsement : review.endorsements) {
        const auto idx = vocab.index_of(endorsement);
        if (!idx) throw DataError("unknown endorsement '" + endorsement + "'");
        out.bits[*idx] = 1;
    }
    const auto context = encode_context(review.context, schema, /*strict=*/true);
    std::copy(context.begin(), context.end(), out.bits.begin() + static_cast<std::ptrdiff_t>(vocab.size()));
    return out;
}

std::vector<std::uint8_t> encode_context(const std::map<std::string, std::string>& context,
                                         const ContextSchema& schema, bool strict) {
    std::vector<std::uint8_t> block(schema.coordinate_count(), 0);
    for (const auto& [feature, category] : context) {
        const auto coord = schema.coordinate(feature, category);
        if (!coord) {
            if (strict) {
                if (!schema.feature_index(feature))
                    throw DataError("unknown context feature '" + feature + "'");
                throw DataError("unknown category '" + category + "' for feature '" + feature + "'");
            }
            continue;
        }
        block[*coord] = 1;
    }
    return block;
}

ContextualReview decode_vector(const EncodedVector& vec, const ContextSchema& schema,
                               const EndorsementVocabulary& vocab) {
    if (vec.endorsement_dim != vocab.size() ||
        vec.bits.size() != vocab.size() + schema.coordinate_count())
        throw DataError("encoded vector does not match schema/vocabulary dimensions");

    ContextualReview review;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (vec.bits[i]) review.endorsements.insert(vocab.endorsements()[i]);
    }
    for (std::size_t j = 0; j < schema.coordinate_count(); ++j) {
        if (!vec.bits[vocab.size() + j]) continue;
        const auto [n, m] = schema.locate(j);
        const auto& feature = schema.features()[n];
        if (review.context.count(feature.name))
            throw DataError("context block for feature '" + feature.name + "' is not one-hot");
        review.context[feature.name] = feature.categories[m];
    }
    return review;
}

}  // namespace cuprank
