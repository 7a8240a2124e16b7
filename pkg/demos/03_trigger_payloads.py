"""Trigger decisions and the 64-bit event payload, bit by bit.

Walks the multiplicative threshold test over a few magnitude/floor pairs,
then packs a trigger into its wire payload and unpacks it again.
"""

from spectrig import (
    TriggerEvent,
    decide_bin,
    decide_event,
    decode_event,
    encode_event,
    payload_to_bytes,
)

COEFFICIENT = 1.5

print(f"multiplicative test: fire iff magnitude > {COEFFICIENT} * floor\n")
cases = [(16.0, 10.0), (15.0, 10.0), (14.9, 10.0), (3.2, 2.0), (0.0, 0.0)]
print("magnitude   floor   threshold   decision")
for mag, floor in cases:
    d = decide_bin(mag, floor, COEFFICIENT)
    print(f"{mag:9.1f}   {floor:5.1f}   {COEFFICIENT * floor:9.2f}   {d}")

decisions = [decide_bin(m, f, COEFFICIENT) for m, f in cases]
print(f"\nsystem event (OR over bins): {decide_event(decisions)}")

# Wire format: 32-bit frame delta | 8-bit bin | 16-bit Q8.8 strength | 8 reserved
event = TriggerEvent(frame_delta=217, bin_id=21, strength=16.0 / 10.0)
payload = encode_event(event)
print(f"\nevent: {event}")
print(f"payload: 0x{payload:016x}  ({payload_to_bytes(payload).hex()} little-endian)")
print(f"  frame_delta field: {payload & 0xFFFFFFFF}")
print(f"  bin field:         {(payload >> 32) & 0xFF}")
print(f"  strength field:    0x{(payload >> 40) & 0xFFFF:04x} (Q8.8 -> {((payload >> 40) & 0xFFFF) / 256})")

restored = decode_event(payload)
print(f"decoded: {restored}")
print(f"\nstrength survives to within 1/256 = {1 / 256:.4f}")
print("one event costs 64 bits; streaming a 16-bin feature vector at 16-bit")
print("resolution costs 256 bits per frame, every frame.")
