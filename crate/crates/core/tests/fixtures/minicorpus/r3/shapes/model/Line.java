package shapes.model;

import shapes.core.Canvas;

public class Line extends AbstractShape {
    private final int length;

    public Line(int x, int y, int length) {
        super(x, y);
        this.length = length; // NOAA 1
    }

    @Override
    public void draw(Canvas canvas) {
        hline(canvas, x, x + length - 1, y); // NOMI 1, NOAA 4
    }

    @Override
    public String name() {
        return "line";
    }
}
