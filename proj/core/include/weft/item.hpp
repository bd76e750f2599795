#pragma once

#include <memory>
#include <stdexcept>
#include <type_traits>
#include <typeinfo>
#include <utility>

namespace weft {

// Type-erased payload travelling on stream edges.
//
// An item is move-only: at any instant exactly one owner holds it, which is
// what lets payloads cross threads without synchronization. Broadcast
// channels that need one payload in several places call share() (additional
// reference to the same immutable payload) or clone() (deep copy), chosen
// per channel at construction.
//
// Two control states exist besides a user payload: the default-constructed
// empty item (used to activate source nodes that have no input) and the
// end-of-stream mark produced by item::eos().
class item {
public:
    item() noexcept = default;

    item(item&& other) noexcept
        : box_(std::move(other.box_)),
          type_(std::exchange(other.type_, nullptr)),
          clone_(std::exchange(other.clone_, nullptr)),
          kind_(std::exchange(other.kind_, kind::empty)) {}

    item& operator=(item&& other) noexcept {
        if (this != &other) {
            box_   = std::move(other.box_);
            type_  = std::exchange(other.type_, nullptr);
            clone_ = std::exchange(other.clone_, nullptr);
            kind_  = std::exchange(other.kind_, kind::empty);
        }
        return *this;
    }

    item(const item&) = delete;
    item& operator=(const item&) = delete;

    // Wraps a value. The payload lives on the heap; the item itself is a
    // small fixed-size handle suitable for queue slots.
    template <typename T>
    static item of(T value) {
        static_assert(!std::is_same_v<std::decay_t<T>, item>,
                      "nesting items is never intended");
        item it;
        it.box_  = std::make_shared<T>(std::move(value));
        it.type_ = &typeid(T);
        if constexpr (std::is_copy_constructible_v<T>) {
            it.clone_ = [](const void* raw) {
                return item::of<T>(T(*static_cast<const T*>(raw)));
            };
        }
        it.kind_ = kind::value;
        return it;
    }

    static item eos() noexcept {
        item it;
        it.kind_ = kind::eos;
        return it;
    }

    bool has_value() const noexcept { return kind_ == kind::value; }
    bool is_eos() const noexcept { return kind_ == kind::eos; }
    explicit operator bool() const noexcept { return has_value(); }

    // Typed view of the payload; nullptr if empty or the type differs.
    template <typename T>
    T* get() noexcept {
        return matches<T>() ? static_cast<T*>(box_.get()) : nullptr;
    }
    template <typename T>
    const T* get() const noexcept {
        return matches<T>() ? static_cast<const T*>(box_.get()) : nullptr;
    }

    // Moves the payload out, leaving the item empty. Only the sole owner may
    // take; a shared payload must be read through get().
    template <typename T>
    T take() {
        if (!matches<T>())
            throw std::logic_error("item::take: type mismatch or no value");
        if (box_.use_count() != 1)
            throw std::logic_error("item::take: payload is shared");
        T out = std::move(*static_cast<T*>(box_.get()));
        reset();
        return out;
    }

    bool can_clone() const noexcept { return clone_ != nullptr; }

    // Second reference to the same payload. The payload must be treated as
    // immutable once shared.
    item share() const {
        item it;
        it.box_   = box_;
        it.type_  = type_;
        it.clone_ = clone_;
        it.kind_  = kind_;
        return it;
    }

    // Deep copy; requires a copy-constructible payload type.
    item clone() const {
        if (kind_ != kind::value) return share();
        if (!clone_) throw std::logic_error("item::clone: payload is not copyable");
        return clone_(box_.get());
    }

    void reset() noexcept {
        box_.reset();
        type_  = nullptr;
        clone_ = nullptr;
        kind_  = kind::empty;
    }

private:
    enum class kind : unsigned char { empty, value, eos };
    using cloner = item (*)(const void*);

    template <typename T>
    bool matches() const noexcept {
        return kind_ == kind::value && type_ && *type_ == typeid(T);
    }

    std::shared_ptr<void> box_;
    const std::type_info* type_ = nullptr;
    cloner clone_ = nullptr;
    kind kind_ = kind::empty;
};

} // namespace weft
