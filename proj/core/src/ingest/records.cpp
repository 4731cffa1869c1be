#include "lifeloop/ingest/records.hpp"

#include "lifeloop/error.hpp"

namespace lifeloop::ingest {

FoodAttrs FoodAttrs::from_event(const events::Event& e) {
    FoodAttrs f;
    f.carbs_g = e.number_or("carbs_g", 0.0);
    f.fat_g = e.number_or("fat_g", 0.0);
    f.protein_g = e.number_or("protein_g", 0.0);
    f.sugar_g = e.number_or("sugar_g", 0.0);
    f.kcal = e.number_or("kcal", 0.0);
    f.dish_id = e.text("dish_id").value_or("");
    return f;
}

void FoodAttrs::store(events::AttrMap& attrs) const {
    attrs.insert_or_assign("carbs_g", carbs_g);
    attrs.insert_or_assign("fat_g", fat_g);
    attrs.insert_or_assign("protein_g", protein_g);
    attrs.insert_or_assign("sugar_g", sugar_g);
    attrs.insert_or_assign("kcal", kcal);
    if (!dish_id.empty()) attrs.insert_or_assign("dish_id", dish_id);
}

void FoodAttrs::validate() const {
    if (carbs_g < 0 || fat_g < 0 || protein_g < 0 || sugar_g < 0) throw ValidationError("negative nutrient mass");
    if (kcal < 0) throw ValidationError("negative kcal");
}

FoodAttrs& FoodAttrs::operator+=(const FoodAttrs& o) {
    carbs_g += o.carbs_g;
    fat_g += o.fat_g;
    protein_g += o.protein_g;
    sugar_g += o.sugar_g;
    kcal += o.kcal;
    return *this;
}

FoodAttrs nutrition_summary(std::span<const events::Event> events, Timestamp t0, Timestamp t1) {
    if (t1 < t0) throw ValidationError("nutrition window end precedes start");
    FoodAttrs total;
    for (const auto& e : events) {
        if (e.stream == events::StreamKind::food && e.start >= t0 && e.start < t1) {
            total += FoodAttrs::from_event(e);
        }
    }
    return total;
}

events::Event to_event(const MoodMark& mark, std::string id, std::string subject) {
    events::Event e;
    e.id = std::move(id);
    e.stream = events::StreamKind::mood;
    e.category = "mark";
    e.start = mark.at;
    e.subject = std::move(subject);
    e.attrs.emplace("valence", static_cast<double>(mark.valence));
    if (mark.event_id) e.attrs.emplace("event", *mark.event_id);
    return e;
}

std::vector<MoodMark> mood_marks(std::span<const events::Event> events) {
    std::vector<MoodMark> out;
    for (const auto& e : events) {
        if (e.stream != events::StreamKind::mood) continue;
        const auto v = e.number("valence");
        if (!v) continue;
        out.push_back({static_cast<int>(*v), e.start, e.text("event")});
    }
    return out;
}

}  // namespace lifeloop::ingest
