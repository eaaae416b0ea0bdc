# coding: utf-8

# # Auditing the word family W_p
#
# W_p is an eight-factor product of A_ij powers.  We compose it symbolically,
# compare against a concrete run, and replay each displayed derivation line.

from palaut import fgauto as fa, wpfamily as wp
from palaut.fgauto import LR, RL

spec = wp.WpSpec()            # i=1, j=2, k=3, symbolic p
print(fa.format_genword(wp.build_wp(spec)))

# Under the default right-to-left convention the rightmost factor acts first.

report = wp.verify_wp(spec, RL)
for x, im in enumerate(report.final_images, start=1):
    print(f"a{x} -> {im}")
print("computed:", report.verdict, "| claimed:", report.claimed)

# The symbolic images agree with every concrete p we try.

for p in range(1, 6):
    concrete = wp.verify_wp(wp.WpSpec(p=p), RL)
    assert tuple(im.evaluate(p) for im in report.final_images) == concrete.final_images
print("symbolic == concrete for p = 1..5")

# The left-to-right reading gives a different composite, also nontrivial.

print("LR verdict:", wp.verify_wp(spec, LR).verdict)

# Replaying the displayed lines one at a time: each line is recomputed from
# the line shown above it, so a single bad line does not poison the rest.

replay = wp.replay_paper_steps(spec, "ak", RL)
print(replay.to_text())

# Transvection count and the rose path.

for p in (1, 2, 3):
    ts = wp.expand_transvections(wp.build_wp(wp.WpSpec(p=p)))
    path = wp.rose_path(ts)
    print(f"p={p}: {len(ts)} transvections, path closed: {path.closed}")
