import random

import pytest

from charterlab.geometry import Rect
from charterlab.model import AnnotationDoc, RectAnnotation, default_ontology


@pytest.fixture
def ontology():
    return default_ontology()


def random_rect(rng: random.Random, max_x=100, max_y=100, integer=True) -> Rect:
    while True:
        xs = sorted(rng.uniform(0, max_x) for _ in range(2))
        ys = sorted(rng.uniform(0, max_y) for _ in range(2))
        if integer:
            xs = [round(x) for x in xs]
            ys = [round(y) for y in ys]
        if xs[0] < xs[1] and ys[0] < ys[1]:
            return Rect(xs[0], ys[0], xs[1], ys[1])


def random_doc(rng: random.Random, image_id: str) -> AnnotationDoc:
    width, height = rng.randint(200, 4000), rng.randint(200, 4000)
    anns = []
    for _ in range(rng.randint(0, 8)):
        rect = random_rect(rng, max_x=width, max_y=height)
        anns.append(RectAnnotation(
            rect=rect,
            class_id=rng.randint(1, 10),
            transcription=rng.choice([None, "ältere Schrift", "nota", "†"]),
            comment=rng.choice([None, "unclear", "check recto"]),
        ))
    return AnnotationDoc(image_id=image_id, width=width, height=height,
                         annotations=tuple(anns))
