#include "lifeloop/ingest/vocabulary.hpp"

namespace lifeloop::ingest {

std::optional<std::size_t> activity_index(std::string_view category) {
    for (std::size_t i = 0; i < kActivityVocabulary.size(); ++i) {
        if (kActivityVocabulary[i] == category) return i;
    }
    return std::nullopt;
}

}  // namespace lifeloop::ingest
