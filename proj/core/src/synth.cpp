// Copyright 2026 The speechner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speechner/synth.hpp"

#include <set>
#include <sstream>
#include <string_view>

#include "speechner/rng.hpp"
#include "speechner/unicode.hpp"

namespace speechner::synth {

namespace {

constexpr std::string_view kFamily[] = {
    "Nguyễn", "Trần", "Lê", "Phạm", "Hoàng", "Phan", "Vũ",  "Đặng",
    "Bùi",    "Đỗ",   "Hồ", "Ngô",  "Dương", "Lý",   "Trương"};
constexpr std::string_view kMiddle[] = {"Văn",  "Thị",  "Đức", "Minh",
                                        "Thu",  "Ngọc", "Hữu", "Quang",
                                        "Thanh", "Xuân"};
// Several of these are also everyday words (hoa, mai, nam, bình, an, hải,
// sơn, tâm, phúc, long, hương, thắng).
constexpr std::string_view kGiven[] = {
    "Hùng", "Lan",  "Hoa",   "Bình", "Nam",  "An",    "Dũng", "Hương",
    "Tuấn", "Mai",  "Hải",   "Long", "Phong", "Sơn",  "Thủy", "Trang",
    "Linh", "Cường", "Hạnh", "Thắng", "Tâm", "Phúc",  "Vân",  "Yến",
    "Quân", "Khánh", "Hiếu", "Nga",  "Thảo", "Đạt"};

constexpr std::string_view kLocations[] = {
    "Hà Nội",    "Đà Nẵng",   "Huế",       "Cần Thơ",   "Hải Phòng",
    "Nha Trang", "Việt Nam",  "Quảng Ninh", "Nghệ An",  "Bình Dương",
    "Long An",   "Lào Cai",   "Sơn La",    "Hà Giang",  "Thanh Hóa",
    "Đồng Nai",  "Tây Ninh",  "An Giang",  "Cà Mau",    "Bến Tre",
    "Vĩnh Long", "Nam Định",  "Thái Bình", "Hòa Bình",  "Phú Yên",
    "Lâm Đồng",  "Gia Lai",   "Kon Tum",   "Hội An",    "Sa Pa",
    "Nhật Bản",  "Hàn Quốc",  "Trung Quốc", "Lào",      "Campuchia"};

constexpr std::string_view kOrgHeads[] = {
    "Công ty",  "Tập đoàn", "Ngân hàng", "Trường Đại học", "Bệnh viện",
    "Sở Y tế",  "Sở Giáo dục", "Ủy ban nhân dân", "Hội Nông dân",
    "Báo"};
constexpr std::string_view kOrgFixed[] = {
    "Bộ Y tế",           "Bộ Giáo dục và Đào tạo", "Bộ Công an",
    "Quốc hội",          "Chính phủ",              "Ngân hàng Nhà nước",
    "Đài Truyền hình Việt Nam", "Báo Tuổi Trẻ",    "Tập đoàn Điện lực",
    "Liên Hợp Quốc",     "FPT",                    "VNPT",
    "WHO",               "UNICEF",                 "EVN"};
constexpr std::string_view kCompanyNames[] = {
    "Hòa Phát", "Vinamilk", "Thành Công", "Bình Minh", "Sao Mai",
    "Hoàng Long", "Phú Thái", "Minh Long", "Tân Hiệp Phát", "Hưng Thịnh"};

// Slots: {PER} {LOC} {ORG} {NUM}. "," and "." are separate pieces and attach
// to the previous word.
constexpr std::string_view kTemplates[] = {
    "Ông {PER} cho biết , {ORG} sẽ mở rộng hoạt động tại {LOC} .",
    "Theo {ORG} , trong tháng qua {LOC} đã đón hơn {NUM} nghìn lượt khách .",
    "Chiều nay , bà {PER} đã đến thăm {LOC} .",
    "{PER} là giám đốc của {ORG} .",
    "Hôm qua , mưa lớn gây ngập nhiều tuyến đường ở {LOC} .",
    "Đại diện {ORG} cho rằng việc này cần được xem xét kỹ .",
    "Anh {PER} sinh ra ở {LOC} , hiện làm việc tại {ORG} .",
    "{PER} và {PER} cùng tham dự hội nghị do {ORG} tổ chức tại {LOC} .",
    "{LOC} là điểm đến hấp dẫn của du khách trong mùa hè .",
    "{ORG} vừa công bố kết quả kinh doanh quý {NUM} .",
    "Phát biểu tại buổi lễ , {PER} nhấn mạnh vai trò của giáo dục .",
    "Sáng nay , đoàn công tác của {ORG} đã làm việc với lãnh đạo {LOC} .",
    "{PER} cho biết sẽ trở lại {LOC} vào tháng {NUM} .",
    "Nhiều người dân {LOC} đã ủng hộ chương trình của {ORG} .",
    "Chị {PER} , nhân viên {ORG} , được khen thưởng vì thành tích xuất sắc .",
    "Đội tuyển {LOC} giành chiến thắng trước {LOC} với tỷ số {NUM} .",
    "Ngày mai , {PER} sẽ bay từ {LOC} đến {LOC} .",
    "Thủ tướng đã tiếp {PER} tại trụ sở {ORG} .",
    "{ORG} khuyến cáo người dân không nên ra ngoài khi trời nắng nóng .",
    "Theo {PER} , giá nhà tại {LOC} tăng mạnh trong năm qua .",
    "Bác sĩ {PER} đang công tác tại {ORG} .",
    "Lãnh đạo {ORG} và {ORG} đã ký kết thỏa thuận hợp tác .",
    "Em {PER} năm nay {NUM} tuổi , đang học lớp {NUM} .",
    "Khách du lịch đến {LOC} thường ghé thăm chợ đêm .",
    "{PER} , {PER} và {PER} là những thành viên mới của {ORG} .",
    // No entities; several ambiguous words in their common sense.
    "Những bông hoa mai nở rộ vào mùa xuân .",
    "Gió từ phía nam thổi mạnh , trời trở lạnh vào ban đêm .",
    "Cuộc sống bình an là điều ai cũng mong muốn .",
    "Ngày mai trời có thể mưa , mọi người nên mang theo áo mưa .",
    "Hương thơm của hoa lan lan tỏa khắp phòng .",
    "Biển xanh , cát trắng và nắng vàng thu hút nhiều du khách .",
    "Anh ấy đặt bình hoa lên bàn rồi đi ra ngoài .",
    "Người dân vùng biển sống chủ yếu nhờ nghề đánh bắt hải sản .",
    "Giá xăng dầu tăng {NUM} lần trong tháng này .",
    "Trận đấu diễn ra sôi nổi , khán giả cổ vũ nhiệt tình .",
    "Đây là một quyết định đúng đắn , mang lại nhiều lợi ích cho người dân .",
    "Năm nay , thu nhập của nông dân tăng khá so với năm trước .",
    "Con rồng vàng bay lên trời , mang theo may mắn và phúc lộc .",
    "Tâm trạng của mọi người đều vui vẻ khi kỳ nghỉ đến gần .",
    "Sơn nhà màu xanh giúp căn phòng sáng sủa hơn .",
};

struct Piece {
  std::string word;
  NerTag tag;
};

void add_entity(std::string_view text, EntityType type,
                std::vector<Piece>& out) {
  std::istringstream in{std::string(text)};
  std::string w;
  bool first = true;
  while (in >> w) {
    out.push_back({w, first ? begin_tag(type) : inside_tag(type)});
    first = false;
  }
}

template <std::size_t N>
std::string_view pick(Rng& rng, const std::string_view (&list)[N]) {
  return list[static_cast<std::size_t>(rng.uniform_int(0, N - 1))];
}

std::string person(Rng& rng) {
  std::string name(pick(rng, kFamily));
  if (rng.uniform01() < 0.7) {
    name += ' ';
    name += pick(rng, kMiddle);
  }
  name += ' ';
  name += pick(rng, kGiven);
  // Some people are referred to by given name only.
  if (rng.uniform01() < 0.25) return std::string(pick(rng, kGiven));
  return name;
}

std::string organization(Rng& rng) {
  const double u = rng.uniform01();
  if (u < 0.4) return std::string(pick(rng, kOrgFixed));
  std::string org(pick(rng, kOrgHeads));
  org += ' ';
  if (u < 0.7) {
    org += pick(rng, kCompanyNames);
  } else {
    org += pick(rng, kLocations);
  }
  return org;
}

Sentence build_sentence(Rng& rng, TagSequence& tags) {
  const std::string_view tmpl = pick(rng, kTemplates);
  std::vector<Piece> pieces;
  std::istringstream in{std::string(tmpl)};
  std::string w;
  while (in >> w) {
    if (w == "{PER}") {
      add_entity(person(rng), EntityType::kPer, pieces);
    } else if (w == "{LOC}") {
      add_entity(pick(rng, kLocations), EntityType::kLoc, pieces);
    } else if (w == "{ORG}") {
      add_entity(organization(rng), EntityType::kOrg, pieces);
    } else if (w == "{NUM}") {
      pieces.push_back({std::to_string(rng.uniform_int(2, 99)), NerTag::kO});
    } else {
      pieces.push_back({w, NerTag::kO});
    }
  }

  Sentence sent;
  tags.clear();
  for (auto& p : pieces) {
    if (p.word == "," || p.word == ".") {
      sent.back().punct_after = p.word == "," ? Punct::kComma : Punct::kPeriod;
      continue;
    }
    sent.emplace_back(std::move(p.word));
    tags.push_back(p.tag);
  }
  // Sentence-initial capital.
  auto cps = unicode::decode(sent.front().surface);
  for (char32_t& c : cps) {
    if (unicode::is_letter(c)) {
      c = unicode::to_upper(c);
      break;
    }
  }
  sent.front() = Token(unicode::encode(cps), sent.front().punct_after);
  return sent;
}

}  // namespace

std::vector<Document> generate_corpus(const SynthConfig& config) {
  Rng rng(config.seed);
  std::vector<Document> docs;
  docs.reserve(config.documents);
  for (std::size_t d = 0; d < config.documents; ++d) {
    Document doc;
    const auto n = static_cast<std::size_t>(rng.uniform_int(
        static_cast<std::int64_t>(config.min_sentences),
        static_cast<std::int64_t>(config.max_sentences)));
    for (std::size_t s = 0; s < n; ++s) {
      TagSequence tags;
      doc.sentences.push_back(build_sentence(rng, tags));
      doc.tags.push_back(std::move(tags));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<std::string> vocabulary(const std::vector<Document>& docs) {
  std::set<std::string> words;
  for (const auto& doc : docs) {
    for (const auto& sent : doc.sentences) {
      for (const auto& t : sent) words.insert(unicode::to_lower(t.surface));
    }
  }
  return {words.begin(), words.end()};
}

}  // namespace speechner::synth
